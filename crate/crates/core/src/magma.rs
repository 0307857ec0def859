//! Free magma monomials, multidegrees, one-hole contexts and polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Per-generator occurrence counts. Ordered by total degree first, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multidegree(Vec<u32>);

impl Multidegree {
    pub fn new(counts: Vec<u32>) -> Self {
        Multidegree(counts)
    }

    pub fn zero(k: usize) -> Self {
        Multidegree(vec![0; k])
    }

    /// The multidegree `(1, ..., 1)` in `k` generators.
    pub fn multilinear(k: usize) -> Self {
        Multidegree(vec![1; k])
    }

    pub fn unit(k: usize, g: usize) -> Self {
        let mut c = vec![0; k];
        c[g] = 1;
        Multidegree(c)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn generators(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == 0)
    }

    pub fn is_multilinear(&self) -> bool {
        self.0.iter().all(|c| *c == 1)
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when `other <= self` componentwise.
    pub fn checked_sub(&self, other: &Multidegree) -> Option<Multidegree> {
        if self.0.len() != other.0.len() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(Multidegree)
    }

    pub fn le(&self, other: &Multidegree) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Every nonzero `d <= self` other than `self`, ascending.
    pub fn proper_parts(&self) -> Vec<Multidegree> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.0.len()];
        fn go(i: usize, bound: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Multidegree>) {
            if i == bound.len() {
                out.push(Multidegree(cur.clone()));
                return;
            }
            for c in 0..=bound[i] {
                cur[i] = c;
                go(i + 1, bound, cur, out);
            }
        }
        go(0, &self.0, &mut cur, &mut out);
        out.retain(|d| !d.is_zero() && d != self);
        out.sort();
        out
    }

    /// Ordered pairs `(a, b)` of nonzero multidegrees with `a + b = self`.
    pub fn splits(&self) -> Vec<(Multidegree, Multidegree)> {
        self.proper_parts()
            .into_iter()
            .map(|a| {
                let b = self.checked_sub(&a).unwrap();
                (a, b)
            })
            .collect()
    }

    /// Ordered tuples of `m` nonzero multidegrees summing to `self`.
    pub fn compositions(&self, m: usize) -> Vec<Vec<Multidegree>> {
        if m == 0 {
            return if self.is_zero() { vec![vec![]] } else { vec![] };
        }
        if m == 1 {
            return if self.is_zero() { vec![] } else { vec![vec![self.clone()]] };
        }
        let mut out = Vec::new();
        for a in self.proper_parts() {
            let rest = self.checked_sub(&a).unwrap();
            for mut tail in rest.compositions(m - 1) {
                tail.insert(0, a.clone());
                out.push(tail);
            }
        }
        out
    }

    /// All multidegrees in `k` generators with the given total, ascending.
    pub fn with_total(k: usize, total: u32) -> Vec<Multidegree> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; k];
        fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Multidegree>) {
            let k = cur.len();
            if i + 1 == k {
                cur[i] = left;
                out.push(Multidegree(cur.clone()));
                return;
            }
            for c in 0..=left {
                cur[i] = c;
                go(i + 1, left - c, cur, out);
            }
        }
        if k == 0 {
            return out;
        }
        go(0, total, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All nonzero multidegrees in `k` generators with total at most `cap`, ascending.
    pub fn up_to(k: usize, cap: u32) -> Vec<Multidegree> {
        (1..=cap).flat_map(|t| Multidegree::with_total(k, t)).collect()
    }
}

impl Ord for Multidegree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Multidegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// How leaf labels are printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    /// Leaf `g` prints as `x{g+1}`.
    Generators,
    /// Leaves `0..26` print as `a..z`; leaf `25 + i` prints as the generator atom `x{i}`.
    Symbols,
}

/// Leaf index reserved for the generator atom `x{i}` (1-based) inside templates.
pub const fn generator_symbol(i: u32) -> u32 {
    25 + i
}

/// A full binary tree over numbered leaves, stored as a preorder shape plus the leaf word.
///
/// `shape` holds `1` for an internal node and `0` for a leaf.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    shape: Vec<u8>,
    leaves: Vec<u32>,
}

impl Monomial {
    pub fn leaf(g: u32) -> Self {
        Monomial {
            shape: vec![0],
            leaves: vec![g],
        }
    }

    pub fn join(left: &Monomial, right: &Monomial) -> Self {
        let mut shape = Vec::with_capacity(1 + left.shape.len() + right.shape.len());
        shape.push(1);
        shape.extend_from_slice(&left.shape);
        shape.extend_from_slice(&right.shape);
        let mut leaves = Vec::with_capacity(left.leaves.len() + right.leaves.len());
        leaves.extend_from_slice(&left.leaves);
        leaves.extend_from_slice(&right.leaves);
        Monomial { shape, leaves }
    }

    fn from_parts(shape: Vec<u8>, leaves: Vec<u32>) -> Self {
        Monomial { shape, leaves }
    }

    pub fn degree(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_leaf(&self) -> bool {
        self.leaves.len() == 1
    }

    pub fn leaves(&self) -> &[u32] {
        &self.leaves
    }

    pub fn shape(&self) -> &[u8] {
        &self.shape
    }

    pub fn multidegree(&self, k: usize) -> Multidegree {
        let mut c = vec![0u32; k];
        for l in &self.leaves {
            c[*l as usize] += 1;
        }
        Multidegree(c)
    }

    fn counts(&self, len: usize) -> Vec<u32> {
        let mut c = vec![0u32; len];
        for l in &self.leaves {
            c[*l as usize] += 1;
        }
        c
    }

    /// Left and right factors of a non-leaf monomial.
    pub fn split(&self) -> Option<(Monomial, Monomial)> {
        if self.is_leaf() {
            return None;
        }
        let mut open = 1i32;
        let mut end = 1;
        let mut nleaves = 0;
        while open > 0 {
            if self.shape[end] == 1 {
                open += 1;
            } else {
                open -= 1;
                nleaves += 1;
            }
            end += 1;
        }
        let left = Monomial::from_parts(self.shape[1..end].to_vec(), self.leaves[..nleaves].to_vec());
        let right = Monomial::from_parts(self.shape[end..].to_vec(), self.leaves[nleaves..].to_vec());
        Some((left, right))
    }

    /// Structural fold: leaves map through `leaf`, products through `node`.
    pub fn fold<T>(&self, leaf: &mut impl FnMut(u32) -> T, node: &mut impl FnMut(T, T) -> T) -> T {
        fn go<T>(
            shape: &[u8],
            leaves: &[u32],
            si: &mut usize,
            li: &mut usize,
            leaf: &mut impl FnMut(u32) -> T,
            node: &mut impl FnMut(T, T) -> T,
        ) -> T {
            let s = shape[*si];
            *si += 1;
            if s == 0 {
                let l = leaves[*li];
                *li += 1;
                leaf(l)
            } else {
                let a = go(shape, leaves, si, li, leaf, node);
                let b = go(shape, leaves, si, li, leaf, node);
                node(a, b)
            }
        }
        let (mut si, mut li) = (0, 0);
        go(&self.shape, &self.leaves, &mut si, &mut li, leaf, node)
    }

    /// Relabels leaves.
    pub fn map_leaves(&self, f: impl Fn(u32) -> u32) -> Monomial {
        Monomial {
            shape: self.shape.clone(),
            leaves: self.leaves.iter().map(|l| f(*l)).collect(),
        }
    }

    /// Fully parenthesized text such as `((x1*x2)*x1)`.
    pub fn render(&self, alphabet: Alphabet) -> String {
        self.fold(
            &mut |l| leaf_name(l, alphabet),
            &mut |a, b| format!("({a}*{b})"),
        )
    }
}

pub(crate) fn leaf_name(l: u32, alphabet: Alphabet) -> String {
    match alphabet {
        Alphabet::Generators => format!("x{}", l + 1),
        Alphabet::Symbols if l < 26 => ((b'a' + l as u8) as char).to_string(),
        Alphabet::Symbols => format!("x{}", l - 25),
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| {
                let len = 1 + self
                    .leaves
                    .iter()
                    .chain(&other.leaves)
                    .copied()
                    .max()
                    .unwrap_or(0) as usize;
                self.counts(len).cmp(&other.counts(len))
            })
            .then_with(|| self.shape.cmp(&other.shape))
            .then_with(|| self.leaves.cmp(&other.leaves))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All full binary tree shapes with `n` leaves in preorder encoding, sorted.
pub fn shapes(n: usize) -> Vec<Vec<u8>> {
    fn go(n: usize, memo: &mut BTreeMap<usize, Vec<Vec<u8>>>) -> Vec<Vec<u8>> {
        if let Some(v) = memo.get(&n) {
            return v.clone();
        }
        let out = if n == 1 {
            vec![vec![0]]
        } else {
            let mut out = Vec::new();
            for i in 1..n {
                let ls = go(i, memo);
                let rs = go(n - i, memo);
                for l in &ls {
                    for r in &rs {
                        let mut s = Vec::with_capacity(2 * n - 1);
                        s.push(1);
                        s.extend_from_slice(l);
                        s.extend_from_slice(r);
                        out.push(s);
                    }
                }
            }
            out.sort();
            out
        };
        memo.insert(n, out.clone());
        out
    }
    if n == 0 {
        return Vec::new();
    }
    go(n, &mut BTreeMap::new())
}

/// Words with the given letter counts, in lexicographic order.
pub fn words(mu: &Multidegree) -> Vec<Vec<u32>> {
    fn go(counts: &mut Vec<u32>, cur: &mut Vec<u32>, n: usize, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for g in 0..counts.len() {
            if counts[g] > 0 {
                counts[g] -= 1;
                cur.push(g as u32);
                go(counts, cur, n, out);
                cur.pop();
                counts[g] += 1;
            }
        }
    }
    let mut out = Vec::new();
    let n = mu.total() as usize;
    go(&mut mu.0.clone(), &mut Vec::with_capacity(n), n, &mut out);
    out
}

/// Every magma monomial of multidegree `mu` over `generators` letters, in canonical order.
pub fn enumerate_monomials(generators: usize, mu: &Multidegree) -> Result<Vec<Monomial>> {
    if mu.generators() != generators {
        return Err(Error::Multidegree(format!(
            "{mu} does not have {generators} components"
        )));
    }
    if mu.total() == 0 {
        return Err(Error::Multidegree("zero total degree".into()));
    }
    let ws = words(mu);
    let mut out = Vec::new();
    for s in shapes(mu.total() as usize) {
        for w in &ws {
            out.push(Monomial::from_parts(s.clone(), w.clone()));
        }
    }
    Ok(out)
}

/// Which side of a product the hole sits on at one wrapping step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// hole · sibling
    Left,
    /// sibling · hole
    Right,
}

/// A monomial with exactly one hole, stored as the wrapping steps from the hole outward.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Context {
    steps: Vec<(Side, Monomial)>,
}

impl Context {
    pub fn hole() -> Self {
        Context { steps: Vec::new() }
    }

    pub fn wrap(&self, side: Side, sibling: Monomial) -> Context {
        let mut steps = self.steps.clone();
        steps.push((side, sibling));
        Context { steps }
    }

    pub fn steps(&self) -> &[(Side, Monomial)] {
        &self.steps
    }

    /// Leaf count including the hole.
    pub fn degree(&self) -> usize {
        1 + self.steps.iter().map(|(_, m)| m.degree()).sum::<usize>()
    }

    pub fn plug_monomial(&self, m: &Monomial) -> Monomial {
        self.steps.iter().fold(m.clone(), |acc, (side, sib)| match side {
            Side::Left => Monomial::join(&acc, sib),
            Side::Right => Monomial::join(sib, &acc),
        })
    }

    /// Linear extension of monomial plugging.
    pub fn plug(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(p.field());
        for (m, c) in p.terms() {
            out.add_term(self.plug_monomial(m), c.clone());
        }
        out
    }

    pub fn render(&self, alphabet: Alphabet) -> String {
        self.steps.iter().fold("_".to_string(), |acc, (side, sib)| {
            let s = sib.render(alphabet);
            match side {
                Side::Left => format!("({acc}*{s})"),
                Side::Right => format!("({s}*{acc})"),
            }
        })
    }
}

/// All contexts which, filled with a monomial of multidegree `hole_mu`, give multidegree `total_mu`.
pub fn enumerate_contexts(
    generators: usize,
    hole_mu: &Multidegree,
    total_mu: &Multidegree,
) -> Result<Vec<Context>> {
    if hole_mu.generators() != generators || total_mu.generators() != generators {
        return Err(Error::Multidegree("generator count mismatch".into()));
    }
    let rest = total_mu.checked_sub(hole_mu).ok_or_else(|| {
        Error::Multidegree(format!("hole {hole_mu} does not fit inside {total_mu}"))
    })?;
    let mut out = Vec::new();
    fn go(k: usize, rest: &Multidegree, cur: Context, out: &mut Vec<Context>) -> Result<()> {
        if rest.is_zero() {
            out.push(cur);
            return Ok(());
        }
        let mut parts = rest.proper_parts();
        parts.push(rest.clone());
        for s in parts {
            let left = rest.checked_sub(&s).unwrap();
            for m in enumerate_monomials(k, &s)? {
                go(k, &left, cur.wrap(Side::Left, m.clone()), out)?;
                go(k, &left, cur.wrap(Side::Right, m), out)?;
            }
        }
        Ok(())
    }
    go(generators, &rest, Context::hole(), &mut out)?;
    Ok(out)
}

/// A finite linear combination of monomials with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldSpec,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: FieldSpec) -> Self {
        Polynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(field: FieldSpec, m: Monomial) -> Self {
        let mut p = Polynomial::zero(field);
        p.terms.insert(m, field.one());
        p
    }

    pub fn generator(field: FieldSpec, g: u32) -> Self {
        Polynomial::monomial(field, Monomial::leaf(g))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_field(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Field(format!(
                "polynomials over {} and {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.scale(&self.field.one().neg()))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field);
        }
        Polynomial {
            field: self.field,
            terms: self.terms.iter().map(|(m, s)| (m.clone(), s.mul(c))).collect(),
        }
    }

    pub fn multiply(&self, other: &Polynomial) -> Result<Polynomial> {
        self.multiply_capped(other, usize::MAX)
    }

    /// Product with every term of degree above `cap` dropped.
    pub fn multiply_capped(&self, other: &Polynomial, cap: usize) -> Result<Polynomial> {
        self.check_field(other)?;
        let mut out = Polynomial::zero(self.field);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.degree() + b.degree() <= cap {
                    out.add_term(Monomial::join(a, b), x.mul(y));
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Polynomial) -> Result<Polynomial> {
        self.multiply(other)?.sub(&other.multiply(self)?)
    }

    pub fn associator(&self, q: &Polynomial, r: &Polynomial) -> Result<Polynomial> {
        self.multiply(q)?.multiply(r)?.sub(&self.multiply(&q.multiply(r)?)?)
    }

    pub fn jordan(&self, other: &Polynomial) -> Result<Polynomial> {
        self.multiply(other)?.add(&other.multiply(self)?)
    }

    /// Homomorphic replacement of every leaf by the polynomial `assign` returns for it.
    pub fn substitute(&self, assign: &dyn Fn(u32) -> Option<Polynomial>) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.field);
        for (m, c) in &self.terms {
            let mut missing = None;
            let value = m.fold(
                &mut |l| match assign(l) {
                    Some(p) => p,
                    None => {
                        missing.get_or_insert(l);
                        Polynomial::zero(self.field)
                    }
                },
                &mut |a: Polynomial, b: Polynomial| a.multiply(&b).expect("same field"),
            );
            if let Some(l) = missing {
                return Err(Error::Unassigned(leaf_name(l, Alphabet::Symbols)));
            }
            if value.field != self.field {
                return Err(Error::Field("substituted value over a different field".into()));
            }
            out = out.add(&value.scale(c))?;
        }
        Ok(out)
    }

    /// Replaces leaves by monomials (the common case of substitution).
    pub fn substitute_monomials(&self, assign: &dyn Fn(u32) -> Option<Monomial>) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.field);
        for (m, c) in &self.terms {
            let mut missing = None;
            let value = m.fold(
                &mut |l| match assign(l) {
                    Some(t) => Some(t),
                    None => {
                        missing.get_or_insert(l);
                        None
                    }
                },
                &mut |a: Option<Monomial>, b: Option<Monomial>| match (a, b) {
                    (Some(a), Some(b)) => Some(Monomial::join(&a, &b)),
                    _ => None,
                },
            );
            match value {
                Some(v) => out.add_term(v, c.clone()),
                None => {
                    return Err(Error::Unassigned(leaf_name(
                        missing.unwrap_or(0),
                        Alphabet::Symbols,
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Splits into multihomogeneous components over `k` letters.
    pub fn homogeneous_parts(&self, k: usize) -> BTreeMap<Multidegree, Polynomial> {
        let mut out: BTreeMap<Multidegree, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.multidegree(k))
                .or_insert_with(|| Polynomial::zero(self.field))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Canonical text, parseable by the expression grammar.
    pub fn render(&self, alphabet: Alphabet) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let body = m.render(alphabet);
            let neg = c.is_negative();
            let mag = if neg { c.neg() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&body);
        }
        out
    }
}
