//! Test-side oracles that share no elimination code paths with the engine's component builder.

#![allow(dead_code)]

use std::collections::HashMap;

use comideal::{
    enumerate_contexts, enumerate_monomials, EchelonBasis, FieldSpec, Monomial, Multidegree, Polynomial, SparseVector,
    VarietySpec,
};
use rand::Rng;

/// Relations at `mu` from every identity, every context and every monomial substitution,
/// pushed without deduplication or ordering.
pub struct NaiveOracle {
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    pub relations: EchelonBasis,
}

fn tuples(k: usize, parts: &[Multidegree]) -> Vec<Vec<Monomial>> {
    let mut out = vec![Vec::new()];
    for p in parts {
        let ms = enumerate_monomials(k, p).unwrap();
        let mut next = Vec::new();
        for t in &out {
            for m in &ms {
                let mut t = t.clone();
                t.push(m.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Ordered sequences of `m` nonzero multidegrees summing to `mu`, by brute force.
pub fn splittings(mu: &Multidegree, m: usize) -> Vec<Vec<Multidegree>> {
    if m == 1 {
        return if mu.is_zero() { vec![] } else { vec![vec![mu.clone()]] };
    }
    let mut out = Vec::new();
    let k = mu.generators();
    let mut first = vec![0u32; k];
    loop {
        let a = Multidegree::new(first.clone());
        if !a.is_zero() {
            if let Some(rest) = mu.checked_sub(&a) {
                for mut tail in splittings(&rest, m - 1) {
                    tail.insert(0, a.clone());
                    out.push(tail);
                }
            }
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return out;
            }
            first[pos] += 1;
            if first[pos] <= mu.counts()[pos] {
                break;
            }
            first[pos] = 0;
            pos += 1;
        }
    }
}

impl NaiveOracle {
    pub fn new(variety: &VarietySpec, field: FieldSpec, k: usize, mu: &Multidegree) -> Self {
        let monomials = enumerate_monomials(k, mu).unwrap();
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for id in variety.defining() {
            let template = id.slotted_template(field).unwrap();
            let arity = id.arity();
            let mut holes: Vec<Multidegree> = Multidegree::up_to(k, mu.total())
                .into_iter()
                .filter(|h| h.le(mu) && h.total() as usize >= arity)
                .collect();
            holes.reverse();
            for hole in holes {
                let contexts = enumerate_contexts(k, &hole, mu).unwrap();
                for parts in splittings(&hole, arity) {
                    for t in tuples(k, &parts) {
                        let inst = template.substitute_monomials(&|s| Some(t[s as usize].clone())).unwrap();
                        for c in &contexts {
                            let p = c.plug(&inst);
                            rows.push(SparseVector::from_pairs(
                                p.terms().map(|(m, s)| (index[m], s.clone())).collect(),
                            ));
                        }
                    }
                }
            }
        }
        let relations = EchelonBasis::rref(field, monomials.len(), rows).unwrap();
        NaiveOracle {
            monomials,
            index,
            relations,
        }
    }

    pub fn quotient_dim(&self) -> usize {
        self.monomials.len() - self.relations.rank()
    }

    pub fn is_zero(&self, p: &Polynomial) -> bool {
        let v = SparseVector::from_pairs(p.terms().map(|(m, s)| (self.index[m], s.clone())).collect());
        self.relations.contains_vector(&v)
    }
}

/// Random homogeneous polynomial at `mu`: a few random monomials with small coefficients.
pub fn random_polynomial(rng: &mut impl Rng, field: FieldSpec, k: usize, mu: &Multidegree) -> Polynomial {
    let ms = enumerate_monomials(k, mu).unwrap();
    let mut p = Polynomial::zero(field);
    for _ in 0..rng.random_range(1..=4) {
        let m = ms[rng.random_range(0..ms.len())].clone();
        p.add_term(m, field.from_i64(rng.random_range(-3i64..=3)));
    }
    p
}

/// Random consequence of the defining identities at `mu`: instances in random contexts,
/// combined with random coefficients. Zero in the variety by construction.
pub fn random_consequence(
    rng: &mut impl Rng,
    variety: &VarietySpec,
    field: FieldSpec,
    k: usize,
    mu: &Multidegree,
) -> Polynomial {
    let mut p = Polynomial::zero(field);
    if variety.defining().is_empty() {
        return p;
    }
    for _ in 0..rng.random_range(1..=3) {
        let id = &variety.defining()[rng.random_range(0..variety.defining().len())];
        let arity = id.arity();
        let holes: Vec<Multidegree> = Multidegree::up_to(k, mu.total())
            .into_iter()
            .filter(|h| h.le(mu) && h.total() as usize >= arity)
            .collect();
        if holes.is_empty() {
            continue;
        }
        let hole = &holes[rng.random_range(0..holes.len())];
        let splits = splittings(hole, arity);
        let parts = &splits[rng.random_range(0..splits.len())];
        let t: Vec<Monomial> = parts
            .iter()
            .map(|d| {
                let ms = enumerate_monomials(k, d).unwrap();
                ms[rng.random_range(0..ms.len())].clone()
            })
            .collect();
        let inst = id
            .slotted_template(field)
            .unwrap()
            .substitute_monomials(&|s| Some(t[s as usize].clone()))
            .unwrap();
        let contexts = enumerate_contexts(k, hole, mu).unwrap();
        let c = &contexts[rng.random_range(0..contexts.len())];
        let scaled = c.plug(&inst).scale(&field.from_i64(rng.random_range(1i64..=3)));
        p = p.add(&scaled).unwrap();
    }
    p
}
