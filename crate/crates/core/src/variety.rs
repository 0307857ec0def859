//! Relatively free algebras of varieties given by multilinear identities, built one
//! multidegree at a time.
//!
//! A component at multidegree `mu` is spanned by the products `u * v` of quotient-basis
//! monomials of complementary lower multidegrees. Every consequence of the defining
//! identities which is not already a product of lower consequences is an identity
//! instance at the root, so the component is that product space modulo the root
//! instances. Normal forms of arbitrary monomials follow by recursion on the factors.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{builtin, Identity};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{EchelonBasis, SparseVector};
use crate::magma::{enumerate_monomials, Alphabet, Monomial, Multidegree, Polynomial};

/// Default bound on the number of spanning monomials in one component.
pub const DEFAULT_MAX_MONOMIALS: usize = 200_000;

/// A variety of algebras given by a list of multilinear identities.
#[derive(Clone, Debug)]
pub struct VarietySpec {
    name: String,
    defining: Vec<Identity>,
}

/// Names accepted by [`VarietySpec::builtin`].
pub const VARIETIES: &[&str] = &["magma", "associative", "novikov", "bicommutative", "assosymmetric"];

impl VarietySpec {
    pub fn new(name: &str, defining: Vec<Identity>) -> Result<Self> {
        if let Some(bad) = defining.iter().find(|i| !i.is_multilinear()) {
            return Err(Error::UnsupportedVariety(format!(
                "defining identity `{}` is not multilinear",
                bad.name()
            )));
        }
        Ok(VarietySpec {
            name: name.to_string(),
            defining,
        })
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let ids: &[&str] = match name {
            "magma" => &[],
            "associative" => &["assoc"],
            "novikov" => &["rightcom", "leftsym"],
            "bicommutative" => &["leftcom", "rightcom"],
            "assosymmetric" => &["leftsym", "rightsym"],
            _ => return Err(Error::UnknownVariety(name.to_string())),
        };
        let defining = ids.iter().map(|n| builtin(n)).collect::<Result<Vec<_>>>()?;
        VarietySpec::new(name, defining)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn defining(&self) -> &[Identity] {
        &self.defining
    }

    /// Copy with one more defining identity.
    pub fn with_identity(&self, id: Identity) -> Result<Self> {
        let mut defining = self.defining.clone();
        defining.push(id);
        VarietySpec::new(&self.name, defining)
    }

    fn cache_key(&self) -> String {
        let mut key = self.name.clone();
        for id in &self.defining {
            key.push('|');
            key.push_str(id.source());
        }
        key
    }
}

/// One multidegree slice of a relatively free algebra.
#[derive(Debug)]
pub struct Component {
    mu: Multidegree,
    field: FieldSpec,
    /// Spanning monomials in canonical order.
    monomials: Vec<Monomial>,
    /// Relations among the spanning monomials.
    relations: EchelonBasis,
    /// Indices of spanning monomials forming the quotient basis.
    basis: Vec<usize>,
    /// Normal form of every spanning monomial in quotient coordinates.
    normal_forms: Vec<SparseVector>,
    /// For each left factor multidegree `a`: spanning index of `basis_a[i] * basis_b[j]` at `i * dim_b + j`.
    pairs: HashMap<Multidegree, (usize, Vec<usize>)>,
}

impl Component {
    pub fn multidegree(&self) -> &Multidegree {
        &self.mu
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn relations(&self) -> &EchelonBasis {
        &self.relations
    }

    pub fn quotient_dim(&self) -> usize {
        self.basis.len()
    }

    /// Quotient basis monomials in coordinate order.
    pub fn basis_monomials(&self) -> Vec<&Monomial> {
        self.basis.iter().map(|i| &self.monomials[*i]).collect()
    }

    pub fn basis_monomial(&self, i: usize) -> &Monomial {
        &self.monomials[self.basis[i]]
    }

    pub fn normal_forms(&self) -> &[SparseVector] {
        &self.normal_forms
    }

    /// Normal form of `basis_a[i] * basis_b[j]`, where `a` is the left multidegree.
    pub fn pair_normal_form(&self, a: &Multidegree, i: usize, j: usize) -> &SparseVector {
        let (dim_b, idx) = &self.pairs[a];
        &self.normal_forms[idx[i * dim_b + j]]
    }

    fn has_pairs_for(&self, a: &Multidegree) -> bool {
        self.pairs.contains_key(a)
    }

    /// Renders a quotient vector as a combination of basis monomials.
    pub fn render(&self, v: &SparseVector) -> String {
        let mut p = Polynomial::zero(self.field);
        for (i, c) in v.iter() {
            p.add_term(self.basis_monomial(*i).clone(), c.clone());
        }
        p.render(Alphabet::Generators)
    }

    /// Quotient vector as a polynomial in the basis monomials.
    pub fn to_polynomial(&self, v: &SparseVector) -> Polynomial {
        let mut p = Polynomial::zero(self.field);
        for (i, c) in v.iter() {
            p.add_term(self.basis_monomial(*i).clone(), c.clone());
        }
        p
    }
}

/// The relatively free algebra of a variety on `k` generators, built lazily per multidegree.
#[derive(Debug)]
pub struct FreeAlgebra {
    variety: VarietySpec,
    field: FieldSpec,
    k: usize,
    max_monomials: usize,
    components: RwLock<HashMap<Multidegree, Arc<Component>>>,
}

type CacheKey = (String, FieldSpec, usize, usize);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<FreeAlgebra>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<FreeAlgebra>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Drops every memoized algebra; later calls rebuild from scratch.
pub fn clear_shared_cache() {
    cache().lock().unwrap().clear();
}

impl FreeAlgebra {
    pub fn new(variety: VarietySpec, field: FieldSpec, k: usize) -> Self {
        FreeAlgebra::with_limit(variety, field, k, DEFAULT_MAX_MONOMIALS)
    }

    pub fn with_limit(variety: VarietySpec, field: FieldSpec, k: usize, max_monomials: usize) -> Self {
        FreeAlgebra {
            variety,
            field,
            k,
            max_monomials,
            components: RwLock::new(HashMap::new()),
        }
    }

    /// Process-wide memoized instance keyed by variety, field, generator count and limit.
    pub fn shared(variety: &VarietySpec, field: FieldSpec, k: usize, max_monomials: usize) -> Arc<FreeAlgebra> {
        let key = (variety.cache_key(), field, k, max_monomials);
        let mut map = cache().lock().unwrap();
        map.entry(key)
            .or_insert_with(|| Arc::new(FreeAlgebra::with_limit(variety.clone(), field, k, max_monomials)))
            .clone()
    }

    pub fn variety(&self) -> &VarietySpec {
        &self.variety
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn generators(&self) -> usize {
        self.k
    }

    fn lookup(&self, mu: &Multidegree) -> Option<Arc<Component>> {
        self.components.read().unwrap().get(mu).cloned()
    }

    /// The component at `mu`, building it and everything below it when missing.
    pub fn component(&self, mu: &Multidegree) -> Result<Arc<Component>> {
        if mu.generators() != self.k {
            return Err(Error::Multidegree(format!(
                "{mu} does not have {} components",
                self.k
            )));
        }
        if mu.is_zero() {
            return Err(Error::Multidegree("zero total degree".into()));
        }
        if let Some(c) = self.lookup(mu) {
            return Ok(c);
        }
        let mut needed = mu.proper_parts();
        needed.push(mu.clone());
        for d in needed {
            if self.lookup(&d).is_none() {
                let c = Arc::new(self.build(&d)?);
                self.components.write().unwrap().entry(d).or_insert(c);
            }
        }
        Ok(self.lookup(mu).unwrap())
    }

    /// Builds every component with total degree at most `cap`, in parallel within a degree.
    pub fn build_up_to(&self, cap: u32) -> Result<()> {
        for t in 1..=cap {
            let missing: Vec<Multidegree> = Multidegree::with_total(self.k, t)
                .into_iter()
                .filter(|d| self.lookup(d).is_none())
                .collect();
            let built: Vec<(Multidegree, Component)> = missing
                .into_par_iter()
                .map(|d| self.build(&d).map(|c| (d, c)))
                .collect::<Result<_>>()?;
            let mut map = self.components.write().unwrap();
            for (d, c) in built {
                map.entry(d).or_insert_with(|| Arc::new(c));
            }
        }
        Ok(())
    }

    fn build(&self, mu: &Multidegree) -> Result<Component> {
        let field = self.field;
        if mu.total() == 1 {
            let g = mu.counts().iter().position(|c| *c == 1).unwrap() as u32;
            return Ok(Component {
                mu: mu.clone(),
                field,
                monomials: vec![Monomial::leaf(g)],
                relations: EchelonBasis::zero(field, 1),
                basis: vec![0],
                normal_forms: vec![SparseVector::unit(0, field)],
                pairs: HashMap::new(),
            });
        }

        let mut lower: HashMap<Multidegree, Arc<Component>> = HashMap::new();
        for d in mu.proper_parts() {
            let c = self.lookup(&d).ok_or_else(|| {
                Error::Input(format!("component {d} must be built before {mu}"))
            })?;
            lower.insert(d, c);
        }

        // Spanning products of lower basis monomials.
        let splits = mu.splits();
        let mut span: Vec<(Monomial, Multidegree, usize)> = Vec::new();
        let mut total = 0usize;
        for (a, b) in &splits {
            total += lower[a].quotient_dim() * lower[b].quotient_dim();
        }
        if total > self.max_monomials {
            return Err(Error::Resource(format!(
                "component {mu} needs {total} spanning monomials (limit {})",
                self.max_monomials
            )));
        }
        for (a, b) in &splits {
            let (ca, cb) = (&lower[a], &lower[b]);
            for i in 0..ca.quotient_dim() {
                for j in 0..cb.quotient_dim() {
                    let m = Monomial::join(ca.basis_monomial(i), cb.basis_monomial(j));
                    span.push((m, a.clone(), i * cb.quotient_dim() + j));
                }
            }
        }
        span.sort_by(|x, y| x.0.cmp(&y.0));
        let mut pairs: HashMap<Multidegree, (usize, Vec<usize>)> = splits
            .iter()
            .map(|(a, b)| {
                let n = lower[a].quotient_dim() * lower[b].quotient_dim();
                (a.clone(), (lower[b].quotient_dim(), vec![usize::MAX; n]))
            })
            .collect();
        for (pos, (_, a, slot)) in span.iter().enumerate() {
            pairs.get_mut(a).unwrap().1[*slot] = pos;
        }
        let monomials: Vec<Monomial> = span.into_iter().map(|(m, _, _)| m).collect();
        let dim = monomials.len();

        // Root instances of the defining identities on lower basis monomials.
        let ctx = Spanning {
            k: self.k,
            lower: &lower,
            pairs: &pairs,
        };
        let mut seen: HashSet<SparseVector> = HashSet::new();
        let mut rows: Vec<SparseVector> = Vec::new();
        for id in self.variety.defining() {
            let template = id.slotted_template(field)?;
            let m = id.arity();
            for parts in mu.compositions(m) {
                let choices: Vec<Vec<&Monomial>> =
                    parts.iter().map(|d| lower[d].basis_monomials()).collect();
                for_each_tuple(&choices, &mut |tuple| {
                    let inst = template
                        .substitute_monomials(&|slot| Some(tuple[slot as usize].clone()))
                        .expect("every slot assigned");
                    let mut acc = SparseVector::zero();
                    for (mono, c) in inst.terms() {
                        acc = acc.axpy(c, &ctx.coordinates(mono));
                    }
                    if !acc.is_zero() {
                        let n = acc.normalized();
                        if seen.insert(n.clone()) {
                            rows.push(n);
                        }
                    }
                });
            }
        }
        let relations = EchelonBasis::rref(field, dim, rows)?;
        let basis = relations.free_columns();
        let mut position = vec![usize::MAX; dim];
        for (q, c) in basis.iter().enumerate() {
            position[*c] = q;
        }
        let mut normal_forms = vec![SparseVector::zero(); dim];
        for q in 0..basis.len() {
            normal_forms[basis[q]] = SparseVector::unit(q, field);
        }
        for (row, p) in relations.rows().iter().zip(relations.pivots()) {
            let pairs_nf: Vec<(usize, Scalar)> = row
                .iter()
                .filter(|(c, _)| c != p)
                .map(|(c, s)| (position[*c], s.neg()))
                .collect();
            normal_forms[*p] = SparseVector::from_pairs(pairs_nf);
        }
        Ok(Component {
            mu: mu.clone(),
            field,
            monomials,
            relations,
            basis,
            normal_forms,
            pairs,
        })
    }

    /// Normal form of one monomial in quotient coordinates of its component.
    pub fn monomial_normal_form(&self, m: &Monomial) -> Result<SparseVector> {
        let mu = self.multidegree_of(m)?;
        let comp = self.component(&mu)?;
        let Some((l, r)) = m.split() else {
            return Ok(SparseVector::unit(0, self.field));
        };
        let a = self.multidegree_of(&l)?;
        let (u, v) = (self.monomial_normal_form(&l)?, self.monomial_normal_form(&r)?);
        Ok(self.multiply_in(&comp, &a, &u, &v))
    }

    fn multiply_in(&self, target: &Component, a: &Multidegree, u: &SparseVector, v: &SparseVector) -> SparseVector {
        let mut acc = SparseVector::zero();
        for (i, x) in u.iter() {
            for (j, y) in v.iter() {
                acc = acc.axpy(&x.mul(y), target.pair_normal_form(a, *i, *j));
            }
        }
        acc
    }

    /// Product of quotient vectors `u` (at `a`) and `v` (at `b`); the component at `a + b` must exist.
    pub fn multiply(&self, a: &Multidegree, u: &SparseVector, b: &Multidegree, v: &SparseVector) -> Result<SparseVector> {
        let target = self.component(&a.add(b))?;
        debug_assert!(target.has_pairs_for(a));
        Ok(self.multiply_in(&target, a, u, v))
    }

    fn multidegree_of(&self, m: &Monomial) -> Result<Multidegree> {
        if m.leaves().iter().any(|l| *l as usize >= self.k) {
            return Err(Error::Multidegree(format!(
                "monomial {} uses more than {} generators",
                m.render(Alphabet::Generators),
                self.k
            )));
        }
        Ok(m.multidegree(self.k))
    }

    /// Normal form of a polynomial homogeneous of multidegree `mu`.
    pub fn normal_form(&self, mu: &Multidegree, p: &Polynomial) -> Result<SparseVector> {
        if p.field() != self.field {
            return Err(Error::Field(format!("polynomial over {}, algebra over {}", p.field(), self.field)));
        }
        let _ = self.component(mu)?;
        let mut acc = SparseVector::zero();
        for (m, c) in p.terms() {
            let d = self.multidegree_of(m)?;
            if &d != mu {
                return Err(Error::Multidegree(format!(
                    "term {} has multidegree {d}, expected {mu}",
                    m.render(Alphabet::Generators)
                )));
            }
            acc = acc.axpy(c, &self.monomial_normal_form(m)?);
        }
        Ok(acc)
    }
}

/// Maps a monomial of the component under construction to spanning coordinates.
struct Spanning<'a> {
    k: usize,
    lower: &'a HashMap<Multidegree, Arc<Component>>,
    pairs: &'a HashMap<Multidegree, (usize, Vec<usize>)>,
}

impl Spanning<'_> {
    fn nf_lower(&self, m: &Monomial) -> SparseVector {
        let d = m.multidegree(self.k);
        let comp = &self.lower[&d];
        match m.split() {
            None => SparseVector::unit(0, comp.field()),
            Some((l, r)) => {
                let a = l.multidegree(self.k);
                let (u, v) = (self.nf_lower(&l), self.nf_lower(&r));
                let mut acc = SparseVector::zero();
                for (i, x) in u.iter() {
                    for (j, y) in v.iter() {
                        acc = acc.axpy(&x.mul(y), comp.pair_normal_form(&a, *i, *j));
                    }
                }
                acc
            }
        }
    }

    fn coordinates(&self, m: &Monomial) -> SparseVector {
        let (l, r) = m.split().expect("degree at least two");
        let a = l.multidegree(self.k);
        let (u, v) = (self.nf_lower(&l), self.nf_lower(&r));
        let (dim_b, idx) = &self.pairs[&a];
        let mut pairs = Vec::with_capacity(u.len() * v.len());
        for (i, x) in u.iter() {
            for (j, y) in v.iter() {
                pairs.push((idx[i * dim_b + j], x.mul(y)));
            }
        }
        SparseVector::from_pairs(pairs)
    }
}

fn for_each_tuple<'a>(choices: &[Vec<&'a Monomial>], f: &mut dyn FnMut(&[Monomial])) {
    fn go<'a>(choices: &[Vec<&'a Monomial>], cur: &mut Vec<Monomial>, f: &mut dyn FnMut(&[Monomial])) {
        if cur.len() == choices.len() {
            f(cur);
            return;
        }
        for m in &choices[cur.len()] {
            cur.push((*m).clone());
            go(choices, cur, f);
            cur.pop();
        }
    }
    go(choices, &mut Vec::with_capacity(choices.len()), f);
}

/// Component of the free algebra (memoized process-wide).
pub fn component_basis(variety: &VarietySpec, field: FieldSpec, k: usize, mu: &Multidegree) -> Result<Arc<Component>> {
    FreeAlgebra::shared(variety, field, k, DEFAULT_MAX_MONOMIALS).component(mu)
}

/// Relations among all magma monomials of multidegree `mu` (coordinates follow
/// [`enumerate_monomials`]). Built from consequences plugged into contexts, one
/// wrapping step at a time.
pub fn relation_space(variety: &VarietySpec, field: FieldSpec, k: usize, mu: &Multidegree) -> Result<EchelonBasis> {
    let mut memo: HashMap<Multidegree, EchelonBasis> = HashMap::new();
    relation_space_memo(variety, field, k, mu, &mut memo)
}

fn relation_space_memo(
    variety: &VarietySpec,
    field: FieldSpec,
    k: usize,
    mu: &Multidegree,
    memo: &mut HashMap<Multidegree, EchelonBasis>,
) -> Result<EchelonBasis> {
    if let Some(b) = memo.get(mu) {
        return Ok(b.clone());
    }
    let monos = enumerate_monomials(k, mu)?;
    let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let to_row = |p: &Polynomial| -> SparseVector {
        SparseVector::from_pairs(p.terms().map(|(m, c)| (index[m], c.clone())).collect())
    };
    let mut rows: Vec<SparseVector> = Vec::new();
    for (a, b) in mu.splits() {
        let ra = relation_space_memo(variety, field, k, &a, memo)?;
        let rb = relation_space_memo(variety, field, k, &b, memo)?;
        let (ma, mb) = (enumerate_monomials(k, &a)?, enumerate_monomials(k, &b)?);
        for r in ra.rows() {
            for m in &mb {
                let mut p = Polynomial::zero(field);
                for (i, c) in r.iter() {
                    p.add_term(Monomial::join(&ma[*i], m), c.clone());
                }
                rows.push(to_row(&p));
            }
        }
        for r in rb.rows() {
            for m in &ma {
                let mut p = Polynomial::zero(field);
                for (i, c) in r.iter() {
                    p.add_term(Monomial::join(m, &mb[*i]), c.clone());
                }
                rows.push(to_row(&p));
            }
        }
    }
    for id in variety.defining() {
        let template = id.slotted_template(field)?;
        for parts in mu.compositions(id.arity()) {
            let lists: Vec<Vec<Monomial>> = parts
                .iter()
                .map(|d| enumerate_monomials(k, d))
                .collect::<Result<_>>()?;
            let refs: Vec<Vec<&Monomial>> = lists.iter().map(|l| l.iter().collect()).collect();
            for_each_tuple(&refs, &mut |tuple| {
                let inst = template
                    .substitute_monomials(&|slot| Some(tuple[slot as usize].clone()))
                    .expect("every slot assigned");
                rows.push(to_row(&inst));
            });
        }
    }
    rows.retain(|r| !r.is_zero());
    let b = EchelonBasis::rref(field, monos.len(), rows)?;
    memo.insert(mu.clone(), b.clone());
    Ok(b)
}

/// Outcome of checking an identity in a variety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum IdentityVerdict {
    Holds {
        multidegrees_checked: usize,
    },
    Fails {
        /// `(variable, monomial text)` pairs.
        substitution: Vec<(String, String)>,
        multidegree: String,
        /// Nonzero normal form, as a combination of quotient basis monomials.
        residual: String,
    },
}

impl IdentityVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityVerdict::Holds { .. })
    }
}

/// Checks whether `identity` holds in the variety.
///
/// Multilinear identities are checked at the generic substitution of distinct generators.
/// Other identities are checked on every substitution of monomials (in canonical order)
/// whose total degree is at most `cap`.
pub fn verify_identity(
    variety: &VarietySpec,
    field: FieldSpec,
    identity: &Identity,
    cap: u32,
    max_monomials: usize,
) -> Result<IdentityVerdict> {
    let m = identity.arity();
    let template = identity.slotted_template(field)?;
    let names: Vec<String> = identity
        .variables()
        .iter()
        .map(|v| crate::magma::leaf_name(*v, Alphabet::Symbols))
        .collect();
    if m == 0 {
        return Ok(IdentityVerdict::Holds { multidegrees_checked: 0 });
    }
    let algebra = FreeAlgebra::shared(variety, field, m, max_monomials);
    if identity.is_multilinear() {
        let mu = Multidegree::multilinear(m);
        let inst = template.substitute_monomials(&|slot| Some(Monomial::leaf(slot)))?;
        let nf = algebra.normal_form(&mu, &inst)?;
        if nf.is_zero() {
            return Ok(IdentityVerdict::Holds { multidegrees_checked: 1 });
        }
        let comp = algebra.component(&mu)?;
        return Ok(IdentityVerdict::Fails {
            substitution: names
                .into_iter()
                .enumerate()
                .map(|(i, n)| (n, Monomial::leaf(i as u32).render(Alphabet::Generators)))
                .collect(),
            multidegree: mu.to_string(),
            residual: comp.render(&nf),
        });
    }

    let max_leaf = template
        .terms()
        .map(|(t, _)| t.degree())
        .max()
        .unwrap_or(1) as u32;
    if cap < max_leaf {
        return Err(Error::Params(format!(
            "cap {cap} is below the identity degree {max_leaf}"
        )));
    }
    // Candidate monomials per variable: every monomial over m generators of degree <= cap.
    let mut pool: Vec<Monomial> = Vec::new();
    for mu in Multidegree::up_to(m, cap) {
        pool.extend(enumerate_monomials(m, &mu)?);
        if pool.len() > max_monomials {
            return Err(Error::Resource(format!(
                "substitution pool exceeds {max_monomials} monomials"
            )));
        }
    }
    pool.sort();
    let mut checked: HashSet<Multidegree> = HashSet::new();
    let mut tuple: Vec<usize> = vec![0; m];
    let mut budget = max_monomials;
    loop {
        let degree: usize = tuple.iter().map(|i| pool[*i].degree()).sum();
        // Highest degree of a term under this substitution; terms with a variable missing vanish.
        let top = template
            .terms()
            .map(|(t, _)| t.leaves().iter().map(|s| pool[tuple[*s as usize]].degree()).sum::<usize>())
            .max()
            .unwrap_or(0);
        if top <= cap as usize && degree <= cap as usize * m {
            if budget == 0 {
                return Err(Error::Resource("too many substitutions".into()));
            }
            budget -= 1;
            let inst = template.substitute_monomials(&|slot| Some(pool[tuple[slot as usize]].clone()))?;
            for (mu, part) in inst.homogeneous_parts(m) {
                checked.insert(mu.clone());
                let nf = algebra.normal_form(&mu, &part)?;
                if !nf.is_zero() {
                    let comp = algebra.component(&mu)?;
                    return Ok(IdentityVerdict::Fails {
                        substitution: names
                            .iter()
                            .zip(&tuple)
                            .map(|(n, i)| (n.clone(), pool[*i].render(Alphabet::Generators)))
                            .collect(),
                        multidegree: mu.to_string(),
                        residual: comp.render(&nf),
                    });
                }
            }
        }
        // Next tuple in lexicographic order.
        let mut pos = m;
        loop {
            if pos == 0 {
                return Ok(IdentityVerdict::Holds {
                    multidegrees_checked: checked.len(),
                });
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < pool.len() {
                break;
            }
            tuple[pos] = 0;
        }
    }
}
