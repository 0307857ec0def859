//! Sparse exact linear algebra: vectors, reduced row-echelon bases, membership and sums.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A sparse vector with strictly increasing indices and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVector {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVector {
    pub fn zero() -> Self {
        SparseVector { entries: Vec::new() }
    }

    pub fn unit(index: usize, field: FieldSpec) -> Self {
        SparseVector {
            entries: vec![(index, field.one())],
        }
    }

    /// Builds a vector from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, Scalar)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(pairs.len());
        for (i, s) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = acc.add(&s),
                _ => entries.push((i, s)),
            }
        }
        entries.retain(|(_, s)| !s.is_zero());
        SparseVector { entries }
    }

    /// Dense constructor from small integers; convenient in tests.
    pub fn from_dense(field: FieldSpec, values: &[i64]) -> Self {
        SparseVector::from_pairs(
            values
                .iter()
                .enumerate()
                .map(|(i, v)| (i, field.from_i64(*v)))
                .collect(),
        )
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<&(usize, Scalar)> {
        self.entries.first()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVector {
        if c.is_zero() {
            return SparseVector::zero();
        }
        SparseVector {
            entries: self.entries.iter().map(|(i, s)| (*i, s.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> SparseVector {
        SparseVector {
            entries: self.entries.iter().map(|(i, s)| (*i, s.neg())).collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Scalar, other: &SparseVector) -> SparseVector {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y.mul(c)));
                        b.next();
                    } else {
                        let s = x.add(&y.mul(c));
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y.mul(c)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVector { entries: out }
    }

    pub fn add(&self, other: &SparseVector) -> SparseVector {
        match other.entries.first() {
            Some((_, s)) => self.axpy(&s.field().one(), other),
            None => self.clone(),
        }
    }

    pub fn sub(&self, other: &SparseVector) -> SparseVector {
        match other.entries.first() {
            Some((_, s)) => self.axpy(&s.field().one().neg(), other),
            None => self.clone(),
        }
    }

    /// Rescales so the leading coefficient is one.
    pub fn normalized(&self) -> SparseVector {
        match self.entries.first() {
            Some((_, lead)) if !lead.is_one() => self.scale(&lead.inv()),
            _ => self.clone(),
        }
    }

    pub fn to_dense(&self, dim: usize, field: FieldSpec) -> Vec<Scalar> {
        let mut out = vec![field.zero(); dim];
        for (i, s) in &self.entries {
            out[*i] = s.clone();
        }
        out
    }
}

/// Result of a membership test against an [`EchelonBasis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `v = sum coordinates[r] * rows[r]`; coordinates are listed per row index.
    Inside { coordinates: Vec<(usize, Scalar)> },
    /// `residual` is `v` minus its projection onto the pivot columns; nonzero.
    Outside { residual: SparseVector },
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside { .. })
    }
}

/// Canonical reduced row-echelon basis of a subspace.
///
/// Rows are sorted by pivot, every pivot entry is one and pivot columns vanish
/// in every other row. Two bases of the same subspace compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EchelonBasis {
    field: FieldSpec,
    ambient_dim: usize,
    rows: Vec<SparseVector>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        EchelonBasis {
            field,
            ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        EchelonBasis {
            field,
            ambient_dim,
            rows: (0..ambient_dim).map(|i| SparseVector::unit(i, field)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Reduced row-echelon basis of the span of `rows`.
    pub fn rref(field: FieldSpec, ambient_dim: usize, rows: Vec<SparseVector>) -> Result<Self> {
        for r in &rows {
            if let Some(m) = r.max_index() {
                if m >= ambient_dim {
                    return Err(Error::Input(format!(
                        "index {m} out of range for ambient dimension {ambient_dim}"
                    )));
                }
            }
        }
        let mut builder = EchelonBuilder::new(field, ambient_dim);
        for r in rows {
            builder.push(r);
        }
        Ok(builder.finish())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient_dim
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn pivot_row(&self, col: usize) -> Option<usize> {
        self.pivots.binary_search(&col).ok()
    }

    fn check_compatible(&self, other: &EchelonBasis) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        if self.field != other.field {
            return Err(Error::Field(format!(
                "cannot combine subspaces over {} and {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    /// Projects `v` away from the pivot columns.
    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        let mut out = v.clone();
        for (col, coef) in v.iter() {
            if let Some(r) = self.pivot_row(*col) {
                out = out.axpy(&coef.neg(), &self.rows[r]);
            }
        }
        out
    }

    pub fn member(&self, v: &SparseVector) -> Result<Membership> {
        if let Some(m) = v.max_index() {
            if m >= self.ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: self.ambient_dim,
                    found: m + 1,
                });
            }
        }
        let coordinates: Vec<(usize, Scalar)> = v
            .iter()
            .filter_map(|(c, s)| self.pivot_row(*c).map(|r| (r, s.clone())))
            .collect();
        let residual = self.reduce(v);
        if residual.is_zero() {
            Ok(Membership::Inside { coordinates })
        } else {
            Ok(Membership::Outside { residual })
        }
    }

    pub fn contains_vector(&self, v: &SparseVector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn sum(&self, other: &EchelonBasis) -> Result<EchelonBasis> {
        self.check_compatible(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut builder = EchelonBuilder::from_basis(self);
        for r in &other.rows {
            builder.push(r.clone());
        }
        Ok(builder.finish())
    }

    /// `other ⊆ self`, decided by reducing each row of `other`.
    pub fn contains(&self, other: &EchelonBasis) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other.rows.iter().all(|r| self.contains_vector(r)))
    }

    /// Rows of `other` (in order) that do not lie in `self`.
    pub fn first_outside<'a>(&self, other: &'a EchelonBasis) -> Option<&'a SparseVector> {
        other.rows.iter().find(|r| !self.contains_vector(r))
    }

    /// Extends with further rows.
    pub fn extended(&self, rows: impl IntoIterator<Item = SparseVector>) -> EchelonBasis {
        let mut builder = EchelonBuilder::from_basis(self);
        for r in rows {
            builder.push(r);
        }
        builder.finish()
    }

    /// Non-pivot columns, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ambient_dim - self.rank());
        let mut piv = self.pivots.iter().peekable();
        for c in 0..self.ambient_dim {
            if piv.peek() == Some(&&c) {
                piv.next();
            } else {
                out.push(c);
            }
        }
        out
    }
}

/// Incremental semi-echelon accumulator; `finish` performs the back substitution.
pub(crate) struct EchelonBuilder {
    field: FieldSpec,
    ambient_dim: usize,
    rows: Vec<SparseVector>,
    pivot_of: HashMap<usize, usize>,
}

impl EchelonBuilder {
    pub(crate) fn new(field: FieldSpec, ambient_dim: usize) -> Self {
        EchelonBuilder {
            field,
            ambient_dim,
            rows: Vec::new(),
            pivot_of: HashMap::new(),
        }
    }

    fn from_basis(b: &EchelonBasis) -> Self {
        let mut builder = EchelonBuilder::new(b.field, b.ambient_dim);
        for (r, p) in b.rows.iter().zip(&b.pivots) {
            builder.pivot_of.insert(*p, builder.rows.len());
            builder.rows.push(r.clone());
        }
        builder
    }

    /// Reduces `v` against the current rows; returns true if the rank grew.
    pub(crate) fn push(&mut self, v: SparseVector) -> bool {
        let mut v = v;
        let mut cursor = 0usize;
        loop {
            // Rows only carry entries at or after their pivot, so a single left-to-right
            // sweep eliminates every pivot column.
            let hit = v
                .iter()
                .skip_while(|(c, _)| *c < cursor)
                .find(|(c, _)| self.pivot_of.contains_key(c))
                .map(|(c, s)| (*c, s.clone()));
            match hit {
                Some((c, s)) => {
                    let r = self.pivot_of[&c];
                    v = v.axpy(&s.neg(), &self.rows[r]);
                    cursor = c + 1;
                }
                None => break,
            }
        }
        if v.is_zero() {
            return false;
        }
        let v = v.normalized();
        let lead = v.leading().map(|(c, _)| *c).unwrap();
        self.pivot_of.insert(lead, self.rows.len());
        self.rows.push(v);
        true
    }

    pub(crate) fn finish(self) -> EchelonBasis {
        let mut order: Vec<(usize, SparseVector)> = self
            .rows
            .into_iter()
            .map(|r| (r.leading().unwrap().0, r))
            .collect();
        order.sort_by_key(|(p, _)| *p);
        let pivots: Vec<usize> = order.iter().map(|(p, _)| *p).collect();
        let mut rows: Vec<SparseVector> = order.into_iter().map(|(_, r)| r).collect();
        // Back substitution from the last pivot upward; rows below are already reduced.
        for i in (0..rows.len()).rev() {
            let mut row = rows[i].clone();
            let hits: Vec<(usize, Scalar)> = row
                .iter()
                .skip(1)
                .filter(|(c, _)| pivots.binary_search(c).is_ok())
                .map(|(c, s)| (*c, s.clone()))
                .collect();
            for (c, _) in hits {
                let j = pivots.binary_search(&c).unwrap();
                if let Some(s) = row.get(c).cloned() {
                    row = row.axpy(&s.neg(), &rows[j]);
                }
            }
            rows[i] = row;
        }
        EchelonBasis {
            field: self.field,
            ambient_dim: self.ambient_dim,
            rows,
            pivots,
        }
    }
}
