//! Graded subspaces of a degree-capped relatively free algebra.
//!
//! Everything above the cap is an ideal, so quotienting by it commutes with products,
//! brackets and ideal closure. Inclusions checked here are therefore exact at every
//! multidegree up to the cap.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{EchelonBasis, SparseVector};
use crate::magma::{Multidegree, Polynomial};
use crate::variety::{Component, FreeAlgebra, VarietySpec, DEFAULT_MAX_MONOMIALS};

static NEXT_SLICE: AtomicU64 = AtomicU64::new(1);

/// The relatively free algebra on `k` generators modulo everything of degree above `cap`.
#[derive(Debug)]
pub struct AlgebraSlice {
    id: u64,
    algebra: Arc<FreeAlgebra>,
    cap: u32,
    components: BTreeMap<Multidegree, Arc<Component>>,
}

/// A subspace given by an echelon basis at each multidegree; absent means zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    slice: u64,
    parts: BTreeMap<Multidegree, EchelonBasis>,
}

impl GradedSubspace {
    pub fn slice_id(&self) -> u64 {
        self.slice
    }

    pub fn part(&self, mu: &Multidegree) -> Option<&EchelonBasis> {
        self.parts.get(mu)
    }

    pub fn parts(&self) -> impl Iterator<Item = (&Multidegree, &EchelonBasis)> {
        self.parts.iter()
    }

    pub fn dim_at(&self, mu: &Multidegree) -> usize {
        self.parts.get(mu).map_or(0, |b| b.rank())
    }

    pub fn dim(&self) -> usize {
        self.parts.values().map(|b| b.rank()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Dimension in each total degree `1..=cap`.
    pub fn dims_by_degree(&self, cap: u32) -> Vec<usize> {
        let mut out = vec![0; cap as usize];
        for (mu, b) in &self.parts {
            out[mu.total() as usize - 1] += b.rank();
        }
        out
    }

    fn insert(&mut self, mu: Multidegree, b: EchelonBasis) {
        if !b.is_zero() {
            self.parts.insert(mu, b);
        }
    }
}

/// Outcome of an inclusion test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Inclusion {
    Verified,
    Violated { multidegree: String, witness: String },
}

impl Inclusion {
    pub fn holds(&self) -> bool {
        matches!(self, Inclusion::Verified)
    }
}

impl AlgebraSlice {
    /// Slice backed by the process-wide component cache.
    pub fn new(variety: &VarietySpec, field: FieldSpec, k: usize, cap: u32) -> Result<Self> {
        AlgebraSlice::with_limit(variety, field, k, cap, DEFAULT_MAX_MONOMIALS)
    }

    pub fn with_limit(variety: &VarietySpec, field: FieldSpec, k: usize, cap: u32, max_monomials: usize) -> Result<Self> {
        AlgebraSlice::from_algebra(FreeAlgebra::shared(variety, field, k, max_monomials), cap)
    }

    pub fn from_algebra(algebra: Arc<FreeAlgebra>, cap: u32) -> Result<Self> {
        if algebra.generators() == 0 {
            return Err(Error::Params("at least one generator is required".into()));
        }
        if cap == 0 {
            return Err(Error::Params("degree cap must be at least 1".into()));
        }
        algebra.build_up_to(cap)?;
        let mut components = BTreeMap::new();
        for mu in Multidegree::up_to(algebra.generators(), cap) {
            let c = algebra.component(&mu)?;
            components.insert(mu, c);
        }
        Ok(AlgebraSlice {
            id: NEXT_SLICE.fetch_add(1, Ordering::Relaxed),
            algebra,
            cap,
            components,
        })
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn generators(&self) -> usize {
        self.algebra.generators()
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn variety(&self) -> &VarietySpec {
        self.algebra.variety()
    }

    pub fn algebra(&self) -> &Arc<FreeAlgebra> {
        &self.algebra
    }

    pub fn component(&self, mu: &Multidegree) -> Option<&Arc<Component>> {
        self.components.get(mu)
    }

    pub fn multidegrees(&self) -> impl Iterator<Item = &Multidegree> {
        self.components.keys()
    }

    /// Renders a vector of the component at `mu`.
    pub fn render(&self, mu: &Multidegree, v: &SparseVector) -> String {
        self.components[mu].render(v)
    }

    fn mul(&self, a: &Multidegree, u: &SparseVector, b: &Multidegree, v: &SparseVector) -> SparseVector {
        let target = &self.components[&a.add(b)];
        let mut acc = SparseVector::zero();
        for (i, x) in u.iter() {
            for (j, y) in v.iter() {
                acc = acc.axpy(&x.mul(y), target.pair_normal_form(a, *i, *j));
            }
        }
        acc
    }

    fn fits(&self, a: &Multidegree, b: &Multidegree) -> bool {
        a.total() + b.total() <= self.cap
    }

    fn same(&self, u: &GradedSubspace) -> Result<()> {
        if u.slice != self.id {
            return Err(Error::SliceMismatch);
        }
        Ok(())
    }

    fn assemble(&self, mut rows: BTreeMap<Multidegree, Vec<SparseVector>>) -> Result<GradedSubspace> {
        let field = self.field();
        let built: Vec<(Multidegree, EchelonBasis)> = std::mem::take(&mut rows)
            .into_par_iter()
            .map(|(mu, r)| {
                let dim = self.components[&mu].quotient_dim();
                EchelonBasis::rref(field, dim, r).map(|b| (mu, b))
            })
            .collect::<Result<_>>()?;
        let mut out = self.zero();
        for (mu, b) in built {
            out.insert(mu, b);
        }
        Ok(out)
    }

    pub fn zero(&self) -> GradedSubspace {
        GradedSubspace {
            slice: self.id,
            parts: BTreeMap::new(),
        }
    }

    pub fn full(&self) -> GradedSubspace {
        let mut out = self.zero();
        for (mu, c) in &self.components {
            out.insert(mu.clone(), EchelonBasis::full(self.field(), c.quotient_dim()));
        }
        out
    }

    /// Subspace spanned by polynomials; terms above the cap are dropped.
    pub fn span(&self, polys: &[Polynomial]) -> Result<GradedSubspace> {
        let mut rows: BTreeMap<Multidegree, Vec<SparseVector>> = BTreeMap::new();
        for p in polys {
            for (mu, part) in p.homogeneous_parts(self.generators()) {
                if mu.total() > self.cap {
                    continue;
                }
                rows.entry(mu.clone()).or_default().push(self.algebra.normal_form(&mu, &part)?);
            }
        }
        self.assemble(rows)
    }

    /// Normal form of a polynomial in this slice, per multidegree (zero parts omitted).
    pub fn element(&self, p: &Polynomial) -> Result<BTreeMap<Multidegree, SparseVector>> {
        let mut out = BTreeMap::new();
        for (mu, part) in p.homogeneous_parts(self.generators()) {
            if mu.total() > self.cap {
                continue;
            }
            let v = self.algebra.normal_form(&mu, &part)?;
            if !v.is_zero() {
                out.insert(mu, v);
            }
        }
        Ok(out)
    }

    pub fn sum(&self, u: &GradedSubspace, v: &GradedSubspace) -> Result<GradedSubspace> {
        self.same(u)?;
        self.same(v)?;
        let mut out = u.clone();
        for (mu, b) in &v.parts {
            let merged = match out.parts.get(mu) {
                Some(a) => a.sum(b)?,
                None => b.clone(),
            };
            out.insert(mu.clone(), merged);
        }
        Ok(out)
    }

    fn bilinear(
        &self,
        u: &GradedSubspace,
        v: &GradedSubspace,
        f: impl Fn(&Multidegree, &SparseVector, &Multidegree, &SparseVector) -> SparseVector + Sync,
    ) -> Result<GradedSubspace> {
        self.same(u)?;
        self.same(v)?;
        let mut jobs: BTreeMap<Multidegree, Vec<(&Multidegree, &Multidegree)>> = BTreeMap::new();
        for a in u.parts.keys() {
            for b in v.parts.keys() {
                if self.fits(a, b) {
                    jobs.entry(a.add(b)).or_default().push((a, b));
                }
            }
        }
        let rows: BTreeMap<Multidegree, Vec<SparseVector>> = jobs
            .into_par_iter()
            .map(|(mu, pairs)| {
                let mut r = Vec::new();
                for (a, b) in pairs {
                    for x in u.parts[a].rows() {
                        for y in v.parts[b].rows() {
                            r.push(f(a, x, b, y));
                        }
                    }
                }
                (mu, r)
            })
            .collect();
        self.assemble(rows)
    }

    /// Span of all products `u v`.
    pub fn product_space(&self, u: &GradedSubspace, v: &GradedSubspace) -> Result<GradedSubspace> {
        self.bilinear(u, v, |a, x, b, y| self.mul(a, x, b, y))
    }

    /// Span of all commutators `[u, v] = uv - vu`.
    pub fn bracket_space(&self, u: &GradedSubspace, v: &GradedSubspace) -> Result<GradedSubspace> {
        self.bilinear(u, v, |a, x, b, y| self.mul(a, x, b, y).sub(&self.mul(b, y, a, x)))
    }

    /// Span of all associators `(u, v, w) = (uv)w - u(vw)`.
    pub fn associator_space(&self, u: &GradedSubspace, v: &GradedSubspace, w: &GradedSubspace) -> Result<GradedSubspace> {
        self.same(u)?;
        self.same(v)?;
        self.same(w)?;
        let mut jobs: BTreeMap<Multidegree, Vec<(&Multidegree, &Multidegree, &Multidegree)>> = BTreeMap::new();
        for a in u.parts.keys() {
            for b in v.parts.keys() {
                for c in w.parts.keys() {
                    if a.total() + b.total() + c.total() <= self.cap {
                        jobs.entry(a.add(b).add(c)).or_default().push((a, b, c));
                    }
                }
            }
        }
        let rows: BTreeMap<Multidegree, Vec<SparseVector>> = jobs
            .into_par_iter()
            .map(|(mu, triples)| {
                let mut r = Vec::new();
                for (a, b, c) in triples {
                    let (ab, bc) = (a.add(b), b.add(c));
                    for x in u.parts[a].rows() {
                        for y in v.parts[b].rows() {
                            let xy = self.mul(a, x, b, y);
                            for z in w.parts[c].rows() {
                                let left = self.mul(&ab, &xy, c, z);
                                let right = self.mul(a, x, &bc, &self.mul(b, y, c, z));
                                r.push(left.sub(&right));
                            }
                        }
                    }
                }
                (mu, r)
            })
            .collect();
        self.assemble(rows)
    }

    /// `U^m` with `U^1 = U` and `U^n = sum of U^i U^(n-i)`.
    pub fn power(&self, u: &GradedSubspace, m: u32) -> Result<GradedSubspace> {
        self.same(u)?;
        if m == 0 {
            return Err(Error::Params("power exponent must be at least 1".into()));
        }
        let mut powers = vec![u.clone()];
        for n in 2..=m as usize {
            let mut acc = self.zero();
            for i in 1..n {
                let p = self.product_space(&powers[i - 1], &powers[n - i - 1])?;
                acc = self.sum(&acc, &p)?;
            }
            powers.push(acc);
        }
        Ok(powers.pop().unwrap())
    }

    /// The two-sided ideal generated by `u`.
    pub fn ideal_closure(&self, u: &GradedSubspace) -> Result<GradedSubspace> {
        self.same(u)?;
        let field = self.field();
        let mut closed = self.zero();
        for t in 1..=self.cap {
            let degrees: Vec<&Multidegree> = self.components.keys().filter(|d| d.total() == t).collect();
            let built: Vec<(Multidegree, EchelonBasis)> = degrees
                .into_par_iter()
                .map(|mu| {
                    let comp = &self.components[mu];
                    let mut rows: Vec<SparseVector> =
                        u.parts.get(mu).map(|b| b.rows().to_vec()).unwrap_or_default();
                    for (a, b) in mu.splits() {
                        let dim_a = self.components[&a].quotient_dim();
                        if let Some(wb) = closed.parts.get(&b) {
                            for i in 0..dim_a {
                                let e = SparseVector::unit(i, field);
                                for w in wb.rows() {
                                    rows.push(self.mul(&a, &e, &b, w));
                                }
                            }
                        }
                        if let Some(wa) = closed.parts.get(&a) {
                            let dim_b = self.components[&b].quotient_dim();
                            for w in wa.rows() {
                                for j in 0..dim_b {
                                    rows.push(self.mul(&a, w, &b, &SparseVector::unit(j, field)));
                                }
                            }
                        }
                    }
                    EchelonBasis::rref(field, comp.quotient_dim(), rows).map(|e| (mu.clone(), e))
                })
                .collect::<Result<_>>()?;
            for (mu, b) in built {
                closed.insert(mu, b);
            }
        }
        Ok(closed)
    }

    /// `U ∘ V`, the ideal generated by `[U, V]`.
    pub fn commutator_ideal(&self, u: &GradedSubspace, v: &GradedSubspace) -> Result<GradedSubspace> {
        let b = self.bracket_space(u, v)?;
        self.ideal_closure(&b)
    }

    /// `H_1 = A`, `H_(i+1) = H_i ∘ A`.
    pub fn lower_central_chain(&self, n: usize) -> Result<ChainReport> {
        let full = self.full();
        let mut terms = vec![full.clone()];
        while terms.len() < n {
            let next = self.commutator_ideal(terms.last().unwrap(), &full)?;
            terms.push(next);
        }
        Ok(ChainReport::new(ChainKind::LowerCentral, self, terms))
    }

    /// `A_[1] = A`, `A_[i+1] = [A, A_[i]]`.
    pub fn lie_power_series(&self, n: usize) -> Result<ChainReport> {
        let full = self.full();
        let mut terms = vec![full.clone()];
        while terms.len() < n {
            let next = self.bracket_space(&full, terms.last().unwrap())?;
            terms.push(next);
        }
        Ok(ChainReport::new(ChainKind::LiePowers, self, terms))
    }

    /// Checks `U ⊆ V`; a violation names the first multidegree and the first basis vector of `U` outside `V`.
    pub fn check_inclusion(&self, u: &GradedSubspace, v: &GradedSubspace) -> Result<Inclusion> {
        self.same(u)?;
        self.same(v)?;
        for (mu, bu) in &u.parts {
            let outside = match v.parts.get(mu) {
                Some(bv) => bv.first_outside(bu),
                None => bu.rows().first(),
            };
            if let Some(w) = outside {
                return Ok(Inclusion::Violated {
                    multidegree: mu.to_string(),
                    witness: self.render(mu, w),
                });
            }
        }
        Ok(Inclusion::Verified)
    }

    /// Checks `U = V` as two inclusions.
    pub fn check_equal(&self, u: &GradedSubspace, v: &GradedSubspace) -> Result<Inclusion> {
        match self.check_inclusion(u, v)? {
            Inclusion::Verified => self.check_inclusion(v, u),
            violated => Ok(violated),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainKind {
    LowerCentral,
    LiePowers,
}

impl ChainKind {
    pub fn symbol(&self) -> &'static str {
        match self {
            ChainKind::LowerCentral => "H",
            ChainKind::LiePowers => "A",
        }
    }
}

impl fmt::Display for ChainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainKind::LowerCentral => "lower-central",
            ChainKind::LiePowers => "lie-powers",
        })
    }
}

/// Terms of a chain with their graded dimensions.
#[derive(Clone, Debug)]
pub struct ChainReport {
    pub kind: ChainKind,
    pub cap: u32,
    pub terms: Vec<GradedSubspace>,
    /// `dims[i][d - 1]` is the dimension of term `i + 1` in total degree `d`.
    pub dims: Vec<Vec<usize>>,
    /// First term (1-based) that is zero up to the cap.
    pub vanishes_at: Option<usize>,
    /// First term (1-based) equal to its successor.
    pub stabilizes_at: Option<usize>,
}

impl ChainReport {
    fn new(kind: ChainKind, slice: &AlgebraSlice, terms: Vec<GradedSubspace>) -> Self {
        let dims = terms.iter().map(|t| t.dims_by_degree(slice.cap())).collect();
        let vanishes_at = terms.iter().position(|t| t.is_zero()).map(|i| i + 1);
        let stabilizes_at = terms.windows(2).position(|w| w[0] == w[1]).map(|i| i + 1);
        ChainReport {
            kind,
            cap: slice.cap(),
            terms,
            dims,
            vanishes_at,
            stabilizes_at,
        }
    }
}

/// How a single claim came out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Violated,
    Inconclusive,
    Informational,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "VERIFIED",
            Status::Violated => "VIOLATED",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::Informational => "INFO",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub claim: String,
    /// Whether the hypotheses hold in this slice, so that a failure would be a counterexample.
    pub asserted: bool,
    pub holds: bool,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub multidegree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub i: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub variety: String,
    pub field: String,
    pub generators: usize,
    pub cap: u32,
    pub params: TheoremParams,
    pub status: Status,
    pub checks: Vec<Check>,
}

/// Names accepted by [`check_theorem`].
pub const THEOREMS: &[&str] = &[
    "com_id",
    "circ_pro",
    "th_pro",
    "lem_mni1",
    "prod_com_id",
    "lem_ideal",
    "lem_ass_ap",
    "lem_46",
    "cp_ass",
    "bicom_metabelian",
    "bicom_not_right_nilpotent",
    "assoc_even_even",
];

/// Combines check statuses: a violation dominates, then inconclusive, then verified.
pub fn overall(checks: &[Check]) -> Status {
    let has = |s| checks.iter().any(|c| c.status == s);
    if has(Status::Violated) {
        Status::Violated
    } else if has(Status::Inconclusive) {
        Status::Inconclusive
    } else if has(Status::Verified) {
        Status::Verified
    } else {
        Status::Informational
    }
}

struct Suite<'a> {
    slice: &'a AlgebraSlice,
    h: Vec<GradedSubspace>,
    a: Vec<GradedSubspace>,
    ida: HashMap<u32, GradedSubspace>,
    checks: Vec<Check>,
}

impl<'a> Suite<'a> {
    fn new(slice: &'a AlgebraSlice) -> Self {
        let full = slice.full();
        Suite {
            slice,
            h: vec![full.clone()],
            a: vec![full],
            ida: HashMap::new(),
            checks: Vec::new(),
        }
    }

    fn full(&self) -> GradedSubspace {
        self.h[0].clone()
    }

    fn h(&mut self, i: u32) -> Result<GradedSubspace> {
        while self.h.len() < i as usize {
            let next = self.slice.commutator_ideal(self.h.last().unwrap(), &self.h[0])?;
            self.h.push(next);
        }
        Ok(self.h[i as usize - 1].clone())
    }

    fn a(&mut self, i: u32) -> Result<GradedSubspace> {
        while self.a.len() < i as usize {
            let next = self.slice.bracket_space(&self.a[0], self.a.last().unwrap())?;
            self.a.push(next);
        }
        Ok(self.a[i as usize - 1].clone())
    }

    fn id_a(&mut self, i: u32) -> Result<GradedSubspace> {
        if let Some(s) = self.ida.get(&i) {
            return Ok(s.clone());
        }
        let a = self.a(i)?;
        let s = self.slice.ideal_closure(&a)?;
        self.ida.insert(i, s.clone());
        Ok(s)
    }

    fn record(&mut self, claim: String, asserted: bool, outcome: Inclusion, note: Option<String>) {
        let holds = outcome.holds();
        let status = match (asserted, holds) {
            (false, _) => Status::Informational,
            (true, true) => Status::Verified,
            (true, false) => Status::Violated,
        };
        let (multidegree, witness) = match outcome {
            Inclusion::Verified => (None, None),
            Inclusion::Violated { multidegree, witness } => (Some(multidegree), Some(witness)),
        };
        self.checks.push(Check {
            claim,
            asserted,
            holds,
            status,
            multidegree,
            witness,
            note,
        });
    }

    fn subset(&mut self, claim: String, asserted: bool, u: &GradedSubspace, v: &GradedSubspace) -> Result<()> {
        let outcome = self.slice.check_inclusion(u, v)?;
        self.record(claim, asserted, outcome, None);
        Ok(())
    }

    fn equal(&mut self, claim: String, asserted: bool, u: &GradedSubspace, v: &GradedSubspace) -> Result<()> {
        let outcome = self.slice.check_equal(u, v)?;
        self.record(claim, asserted, outcome, None);
        Ok(())
    }
}

fn require(name: &str, value: Option<u32>, default: u32) -> Result<u32> {
    let v = value.unwrap_or(default);
    if v == 0 {
        return Err(Error::Params(format!("parameter {name} must be positive")));
    }
    Ok(v)
}

/// Instantiates a named theorem in a slice and checks every resulting inclusion.
///
/// Missing parameters default to `p = q = 2`, `i = 2`, `j = 3` (`j = 2` for
/// `assoc_even_even`) and `m = 2`. Parameters whose composite degree exceeds the cap
/// are rejected.
pub fn check_theorem(name: &str, slice: &AlgebraSlice, params: &TheoremParams) -> Result<TheoremReport> {
    let variety = slice.variety().name().to_string();
    let char_p = slice.field().characteristic();
    let nb = matches!(variety.as_str(), "novikov" | "bicommutative");
    let asym = matches!(variety.as_str(), "assosymmetric" | "associative");
    let good_char = char_p != 2 && char_p != 3;
    let p = require("p", params.p, 2)?;
    let q = require("q", params.q, 2)?;
    let i = require("i", params.i, 2)?;
    let j = require("j", params.j, if name == "assoc_even_even" { 2 } else { 3 })?;
    let m = require("m", params.m, 2)?;

    let (budget, used) = match name {
        "com_id" => (i + 1, TheoremParams { i: Some(i), ..Default::default() }),
        "circ_pro" => (p + q, TheoremParams { p: Some(p), q: Some(q), ..Default::default() }),
        "th_pro" => ((p + q).max(m + 1), TheoremParams { p: Some(p), q: Some(q), m: Some(m), ..Default::default() }),
        "lem_mni1" => (i + 2, TheoremParams { i: Some(i), ..Default::default() }),
        "prod_com_id" => (i, TheoremParams { i: Some(i), ..Default::default() }),
        "lem_ideal" => (3, TheoremParams::default()),
        "lem_ass_ap" => (p + q, TheoremParams { p: Some(p), q: Some(q), ..Default::default() }),
        "lem_46" => (j + 1, TheoremParams { j: Some(j), ..Default::default() }),
        "cp_ass" | "assoc_even_even" => (i + j, TheoremParams { i: Some(i), j: Some(j), ..Default::default() }),
        "bicom_metabelian" => (4, TheoremParams::default()),
        "bicom_not_right_nilpotent" => (3, TheoremParams::default()),
        _ => return Err(Error::Params(format!("unknown theorem `{name}`"))),
    };
    if budget > slice.cap() {
        return Err(Error::Params(format!(
            "{name} needs degree cap at least {budget}, got {}",
            slice.cap()
        )));
    }

    let mut s = Suite::new(slice);
    let full = s.full();
    match name {
        "com_id" => {
            let b = slice.bracket_space(&full, &full)?;
            let rhs = slice.sum(&b, &slice.product_space(&full, &b)?)?;
            s.equal("Id([A,A]) = [A,A] + A[A,A]".into(), nb, &slice.ideal_closure(&b)?, &rhs)?;
            for t in 2..=i {
                let at = s.a(t)?;
                let rhs = slice.sum(&at, &slice.product_space(&full, &at)?)?;
                let lhs = s.id_a(t)?;
                s.equal(format!("Id(A_[{t}]) = A_[{t}] + A A_[{t}]"), nb, &lhs, &rhs)?;
            }
        }
        "circ_pro" => {
            let (hp, hq, hpq) = (s.h(p)?, s.h(q)?, s.h(p + q)?);
            s.subset(format!("H_{p} o H_{q} <= H_{}", p + q), nb, &slice.commutator_ideal(&hp, &hq)?, &hpq)?;
        }
        "th_pro" => {
            for a in 1..=p {
                for b in 1..=q {
                    let (ha, hb, hab) = (s.h(a)?, s.h(b)?, s.h(a + b - 1)?);
                    s.subset(format!("H_{a} H_{b} <= H_{}", a + b - 1), nb, &slice.product_space(&ha, &hb)?, &hab)?;
                }
            }
            let h2 = s.h(2)?;
            for t in 1..=m {
                let target = s.h(t + 1)?;
                s.subset(format!("(H_2)^{t} <= H_{}", t + 1), nb, &slice.power(&h2, t)?, &target)?;
            }
        }
        "lem_mni1" => {
            let a2 = s.a(2)?;
            for t in 1..=i {
                let (at, target) = (s.a(t)?, s.id_a(t + 1)?);
                s.subset(format!("A_[2] A_[{t}] <= Id(A_[{}])", t + 1), nb, &slice.product_space(&a2, &at)?, &target)?;
            }
        }
        "prod_com_id" => {
            for t in 1..=i {
                let (lhs, rhs) = (s.id_a(t)?, s.h(t)?);
                s.equal(format!("Id(A_[{t}]) = H_{t}"), nb, &lhs, &rhs)?;
            }
        }
        "lem_ideal" => {
            let a2 = s.a(2)?;
            for (label, b) in [("A", full.clone()), ("A_[2]", a2)] {
                let bra = slice.bracket_space(&b, &full)?;
                let rhs = slice.sum(&slice.product_space(&full, &bra)?, &bra)?;
                let assoc = slice.associator_space(&full, &b, &full)?;
                s.subset(format!("(A,{label},A) <= A[{label},A] + [{label},A]"), asym, &assoc, &rhs)?;
                let bra = slice.bracket_space(&full, &b)?;
                let id = slice.ideal_closure(&bra)?;
                let left = slice.sum(&bra, &slice.product_space(&full, &bra)?)?;
                let right = slice.sum(&bra, &slice.product_space(&bra, &full)?)?;
                s.equal(format!("A o {label} = [A,{label}] + A[A,{label}]"), asym, &id, &left)?;
                s.equal(format!("A o {label} = [A,{label}] + [A,{label}]A"), asym, &id, &right)?;
            }
        }
        "lem_ass_ap" => {
            for a in 1..=p {
                for b in 1..=q {
                    let (ha, hb) = (s.h(a)?, s.h(b)?);
                    let (lower, upper) = (s.h(a + b - 1)?, s.h(a + b)?);
                    s.subset(format!("H_{a} H_{b} <= H_{}", a + b - 1), asym, &slice.product_space(&ha, &hb)?, &lower)?;
                    s.subset(format!("[H_{a},H_{b}] <= H_{}", a + b), asym, &slice.bracket_space(&ha, &hb)?, &upper)?;
                    s.subset(
                        format!("(H_{a},H_{b},A) <= H_{}", a + b),
                        asym,
                        &slice.associator_space(&ha, &hb, &full)?,
                        &upper,
                    )?;
                }
            }
        }
        "lem_46" => {
            let asserted = asym && good_char && j % 2 == 1;
            let (id, target) = (s.id_a(j)?, s.a(j + 1)?);
            s.subset(format!("[Id(A_[{j}]),A] <= A_[{}]", j + 1), asserted, &slice.bracket_space(&id, &full)?, &target)?;
        }
        "cp_ass" => {
            let asserted = asym && good_char && (i % 2 == 1 || j % 2 == 1);
            let (ii, ij, target) = (s.id_a(i)?, s.id_a(j)?, s.id_a(i + j - 1)?);
            let k = i + j - 1;
            s.subset(format!("Id(A_[{i}]) Id(A_[{j}]) <= Id(A_[{k}])"), asserted, &slice.product_space(&ii, &ij)?, &target)?;
            s.subset(format!("Id(A_[{j}]) Id(A_[{i}]) <= Id(A_[{k}])"), asserted, &slice.product_space(&ij, &ii)?, &target)?;
        }
        "bicom_metabelian" => {
            let b = slice.bracket_space(&full, &full)?;
            let bb = slice.bracket_space(&b, &b)?;
            s.subset("[[A,A],[A,A]] = 0".into(), variety == "bicommutative", &bb, &slice.zero())?;
        }
        "bicom_not_right_nilpotent" => {
            let asserted = variety == "bicommutative" && slice.generators() >= 3;
            let mut term = s.h(2)?;
            let mut t = 1;
            loop {
                let dims = term.dims_by_degree(slice.cap());
                let outcome = if term.is_zero() {
                    Inclusion::Violated {
                        multidegree: String::new(),
                        witness: "0".into(),
                    }
                } else {
                    Inclusion::Verified
                };
                let note = Some(format!("dims by degree {dims:?}"));
                s.record(format!("H_2 R^{} != 0", t - 1), asserted, outcome, note);
                if t + 1 >= slice.cap() {
                    break;
                }
                term = slice.product_space(&term, &full)?;
                t += 1;
            }
            for c in s.checks.iter_mut().filter(|c| !c.holds) {
                c.multidegree = None;
                c.witness = None;
            }
        }
        "assoc_even_even" => {
            let (ii, ij, target) = (s.id_a(i)?, s.id_a(j)?, s.id_a(i + j - 1)?);
            let k = i + j - 1;
            let outcome = slice.check_inclusion(&slice.product_space(&ii, &ij)?, &target)?;
            let applicable = asym && i % 2 == 0 && j % 2 == 0;
            let holds = outcome.holds();
            let (status, note) = match (applicable, holds) {
                (false, _) => (Status::Informational, None),
                (true, false) => (Status::Violated, Some("inclusion fails: counterexample found".to_string())),
                (true, true) => (
                    Status::Inconclusive,
                    Some(format!("no counterexample up to degree {}", slice.cap())),
                ),
            };
            let (multidegree, witness) = match outcome {
                Inclusion::Verified => (None, None),
                Inclusion::Violated { multidegree, witness } => (Some(multidegree), Some(witness)),
            };
            s.checks.push(Check {
                claim: format!("Id(A_[{i}]) Id(A_[{j}]) <= Id(A_[{k}])"),
                asserted: applicable,
                holds,
                status,
                multidegree,
                witness,
                note,
            });
        }
        _ => unreachable!(),
    }
    let checks = s.checks;
    Ok(TheoremReport {
        theorem: name.to_string(),
        variety,
        field: slice.field().label(),
        generators: slice.generators(),
        cap: slice.cap(),
        params: used,
        status: overall(&checks),
        checks,
    })
}
