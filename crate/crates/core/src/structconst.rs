//! Finite-dimensional algebras given by structure constants.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::ideal::Status;
use crate::linalg::{EchelonBasis, SparseVector};
use crate::magma::Monomial;
use crate::variety::VarietySpec;

/// Varieties checked by [`audit`].
pub const AUDITED_VARIETIES: &[&str] = &["novikov", "bicommutative", "assosymmetric", "associative"];

/// An algebra with basis `e_1..e_n` and products `e_i e_j = sum_k c[i][j][k] e_k`.
///
/// Indices are 0-based in the API and 1-based in files and reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDimAlgebra {
    field: FieldSpec,
    dim: usize,
    table: Vec<SparseVector>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    field: RawField,
    dim: usize,
    products: Vec<(usize, usize, usize, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawField {
    Name(String),
    Prime { p: u64 },
}

#[derive(Serialize)]
struct RawOut {
    field: RawField,
    dim: usize,
    products: Vec<(usize, usize, usize, String)>,
}

impl FiniteDimAlgebra {
    pub fn zero(field: FieldSpec, dim: usize) -> Self {
        FiniteDimAlgebra {
            field,
            dim,
            table: vec![SparseVector::zero(); dim * dim],
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets `e_i e_j` (0-based).
    pub fn set_product(&mut self, i: usize, j: usize, v: SparseVector) -> Result<()> {
        if i >= self.dim || j >= self.dim || v.max_index().is_some_and(|k| k >= self.dim) {
            return Err(Error::Input(format!("basis index out of range for dimension {}", self.dim)));
        }
        self.table[i * self.dim + j] = v;
        Ok(())
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVector {
        &self.table[i * self.dim + j]
    }

    pub fn mul(&self, u: &SparseVector, v: &SparseVector) -> SparseVector {
        let mut acc = SparseVector::zero();
        for (i, x) in u.iter() {
            for (j, y) in v.iter() {
                acc = acc.axpy(&x.mul(y), self.product(*i, *j));
            }
        }
        acc
    }

    pub fn bracket(&self, u: &SparseVector, v: &SparseVector) -> SparseVector {
        self.mul(u, v).sub(&self.mul(v, u))
    }

    pub fn basis_vector(&self, i: usize) -> SparseVector {
        SparseVector::unit(i, self.field)
    }

    /// Relabels the basis: `e_i` becomes `e_perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.dim).collect::<Vec<_>>() {
            return Err(Error::Input("not a permutation of the basis".into()));
        }
        let mut out = FiniteDimAlgebra::zero(self.field, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = SparseVector::from_pairs(
                    self.product(i, j).iter().map(|(k, c)| (perm[*k], c.clone())).collect(),
                );
                out.set_product(perm[i], perm[j], v)?;
            }
        }
        Ok(out)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawAlgebra = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        FiniteDimAlgebra::from_raw(raw)
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self> {
        let raw: RawAlgebra = serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))?;
        FiniteDimAlgebra::from_raw(raw)
    }

    fn from_raw(raw: RawAlgebra) -> Result<Self> {
        let field = match raw.field {
            RawField::Name(n) if n == "Q" => FieldSpec::Rationals,
            RawField::Name(n) => return Err(Error::Schema(format!("unknown field `{n}`"))),
            RawField::Prime { p } => FieldSpec::prime(p).map_err(|e| Error::Schema(e.to_string()))?,
        };
        let n = raw.dim;
        let mut entries: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
        let mut seen = std::collections::HashSet::new();
        for (i, j, k, c) in raw.products {
            if [i, j, k].iter().any(|x| *x == 0 || *x > n) {
                return Err(Error::Schema(format!("index in [{i},{j},{k}] outside 1..={n}")));
            }
            if !seen.insert((i, j, k)) {
                return Err(Error::Schema(format!("duplicate entry [{i},{j},{k}]")));
            }
            let c = field.parse_scalar(&c).map_err(|e| Error::Schema(format!("coefficient `{c}`: {e}")))?;
            entries.entry((i - 1, j - 1)).or_default().push((k - 1, c));
        }
        let mut alg = FiniteDimAlgebra::zero(field, n);
        for ((i, j), v) in entries {
            alg.set_product(i, j, SparseVector::from_pairs(v))?;
        }
        Ok(alg)
    }

    pub fn to_value(&self) -> serde_json::Value {
        let field = match self.field {
            FieldSpec::Rationals => RawField::Name("Q".into()),
            FieldSpec::Prime(p) => RawField::Prime { p },
        };
        let mut products = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.product(i, j).iter() {
                    products.push((i + 1, j + 1, k + 1, c.to_string()));
                }
            }
        }
        serde_json::to_value(RawOut {
            field,
            dim: self.dim,
            products,
        })
        .expect("plain data serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_value()).expect("plain data serializes")
    }

    fn eval(&self, m: &Monomial, args: &[SparseVector]) -> SparseVector {
        m.fold(&mut |slot| args[slot as usize].clone(), &mut |a, b| self.mul(&a, &b))
    }

    fn full(&self) -> EchelonBasis {
        EchelonBasis::full(self.field, self.dim)
    }

    fn span(&self, rows: Vec<SparseVector>) -> EchelonBasis {
        EchelonBasis::rref(self.field, self.dim, rows).expect("indices below dim")
    }

    pub fn product_space(&self, u: &EchelonBasis, v: &EchelonBasis) -> EchelonBasis {
        let mut rows = Vec::new();
        for x in u.rows() {
            for y in v.rows() {
                rows.push(self.mul(x, y));
            }
        }
        self.span(rows)
    }

    pub fn bracket_space(&self, u: &EchelonBasis, v: &EchelonBasis) -> EchelonBasis {
        let mut rows = Vec::new();
        for x in u.rows() {
            for y in v.rows() {
                rows.push(self.bracket(x, y));
            }
        }
        self.span(rows)
    }

    /// Fixed point of `V -> V + AV + VA`.
    pub fn ideal_closure(&self, u: &EchelonBasis) -> EchelonBasis {
        let mut cur = u.clone();
        loop {
            let mut rows = cur.rows().to_vec();
            for w in cur.rows() {
                for i in 0..self.dim {
                    let e = self.basis_vector(i);
                    rows.push(self.mul(&e, w));
                    rows.push(self.mul(w, &e));
                }
            }
            let next = self.span(rows);
            if next.rank() == cur.rank() {
                return cur;
            }
            cur = next;
        }
    }
}

/// Result of evaluating the defining identities on basis tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum MembershipVerdict {
    Member,
    Fails {
        identity: String,
        /// 1-based basis indices substituted for the identity's variables.
        tuple: Vec<usize>,
        residual: String,
    },
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipVerdict::Member)
    }
}

fn render_vector(v: &SparseVector) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (i, c)) in v.iter().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { c.neg() } else { c.clone() };
        if n > 0 {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        if !abs.is_one() {
            out.push_str(&format!("{abs}*"));
        }
        out.push_str(&format!("e{}", i + 1));
    }
    out
}

/// Checks every defining identity on every basis tuple, in lexicographic order.
pub fn check_membership(alg: &FiniteDimAlgebra, variety: &VarietySpec) -> Result<MembershipVerdict> {
    for id in variety.defining() {
        let template = id.slotted_template(alg.field())?;
        let arity = id.arity();
        let mut tuple = vec![0usize; arity];
        if alg.dim() == 0 {
            continue;
        }
        loop {
            let args: Vec<SparseVector> = tuple.iter().map(|i| alg.basis_vector(*i)).collect();
            let mut acc = SparseVector::zero();
            for (m, c) in template.terms() {
                acc = acc.axpy(c, &alg.eval(m, &args));
            }
            if !acc.is_zero() {
                return Ok(MembershipVerdict::Fails {
                    identity: id.name().to_string(),
                    tuple: tuple.iter().map(|i| i + 1).collect(),
                    residual: render_vector(&acc),
                });
            }
            let mut pos = arity;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] < alg.dim() {
                    break;
                }
                tuple[pos] = 0;
            }
            if tuple.iter().all(|i| *i == 0) {
                break;
            }
        }
    }
    Ok(MembershipVerdict::Member)
}

/// A chain of subspaces of a finite-dimensional algebra.
#[derive(Clone, Debug)]
pub struct FdChain {
    pub terms: Vec<EchelonBasis>,
    /// The chain reached zero.
    pub reaches_zero: bool,
    /// Smallest `i` with term `i + 1` zero, when the chain reaches zero.
    pub class: Option<usize>,
}

impl FdChain {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.rank()).collect()
    }

    fn build(alg: &FiniteDimAlgebra, step: impl Fn(&EchelonBasis) -> EchelonBasis) -> Self {
        let mut terms = vec![alg.full()];
        while terms.len() <= alg.dim() + 1 {
            let last = terms.last().unwrap();
            if last.is_zero() {
                break;
            }
            let next = step(last);
            let stable = next.rank() == last.rank();
            terms.push(next);
            if stable {
                break;
            }
        }
        let first_zero = terms.iter().position(|t| t.is_zero());
        FdChain {
            terms,
            reaches_zero: first_zero.is_some(),
            class: first_zero,
        }
    }
}

/// `A_[1] = A`, `A_[i+1] = [A, A_[i]]`, until zero or stable.
pub fn lie_series_fd(alg: &FiniteDimAlgebra) -> FdChain {
    let full = alg.full();
    FdChain::build(alg, |t| alg.bracket_space(&full, t))
}

/// `H_1 = A`, `H_(i+1)` the ideal generated by `[H_i, A]`, until zero or stable.
pub fn lower_central_fd(alg: &FiniteDimAlgebra) -> FdChain {
    let full = alg.full();
    FdChain::build(alg, |t| alg.ideal_closure(&alg.bracket_space(t, &full)))
}

/// Smallest `m` with `(A∘A)^m = 0`, or `None` if not reached within `dim + 1` powers.
pub fn commutator_ideal_nilpotency(alg: &FiniteDimAlgebra) -> Option<usize> {
    let full = alg.full();
    let v = alg.ideal_closure(&alg.bracket_space(&full, &full));
    let mut powers = vec![v];
    for n in 1..=alg.dim() + 1 {
        if powers[n - 1].is_zero() {
            return Some(n);
        }
        let mut rows = Vec::new();
        for i in 1..=n {
            rows.extend(alg.product_space(&powers[i - 1], &powers[n - i]).rows().iter().cloned());
        }
        powers.push(alg.span(rows));
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipLine {
    pub variety: String,
    pub verdict: MembershipVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditLine {
    pub claim: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub field: String,
    pub dim: usize,
    pub membership: Vec<MembershipLine>,
    pub lie_nilpotent: bool,
    pub lie_class: Option<usize>,
    pub lie_dims: Vec<usize>,
    pub finite_class: bool,
    pub class: Option<usize>,
    pub lower_central_dims: Vec<usize>,
    pub nilpotency_index: Option<usize>,
    pub lines: Vec<AuditLine>,
    pub pass: bool,
}

fn fmt_opt(v: Option<usize>) -> String {
    v.map_or("none".into(), |x| x.to_string())
}

/// Membership, chains and the consistency checks between them.
pub fn audit(alg: &FiniteDimAlgebra) -> Result<AuditReport> {
    let mut membership = Vec::new();
    for name in AUDITED_VARIETIES {
        let verdict = check_membership(alg, &VarietySpec::builtin(name)?)?;
        membership.push(MembershipLine {
            variety: name.to_string(),
            verdict,
        });
    }
    let member = |n: &str| membership.iter().any(|l| l.variety == n && l.verdict.is_member());
    let nb = member("novikov") || member("bicommutative");
    let covered = nb || member("assosymmetric");

    let lie = lie_series_fd(alg);
    let lower = lower_central_fd(alg);
    let index = commutator_ideal_nilpotency(alg);

    let mut lines = Vec::new();
    let same = lie.reaches_zero == lower.reaches_zero;
    lines.push(AuditLine {
        claim: "lie nilpotent <=> finite class".into(),
        status: match (nb, same) {
            (false, _) => Status::Informational,
            (true, true) => Status::Verified,
            (true, false) => Status::Violated,
        },
        detail: format!("lie nilpotent {}, finite class {}", lie.reaches_zero, lower.reaches_zero),
    });
    let (status, detail) = match (lower.class, index) {
        (Some(c), Some(m)) => (
            if !covered {
                Status::Informational
            } else if m <= c {
                Status::Verified
            } else {
                Status::Violated
            },
            format!("index {m}, class {c}"),
        ),
        (Some(c), None) => (
            if covered { Status::Violated } else { Status::Informational },
            format!("index none, class {c}"),
        ),
        (None, m) => (Status::Informational, format!("index {}, class none", fmt_opt(m))),
    };
    lines.push(AuditLine {
        claim: "nilpotency index of A o A <= class".into(),
        status,
        detail,
    });
    let pass = lines.iter().all(|l| l.status != Status::Violated);
    Ok(AuditReport {
        field: alg.field().label(),
        dim: alg.dim(),
        membership,
        lie_nilpotent: lie.reaches_zero,
        lie_class: lie.class,
        lie_dims: lie.dims(),
        finite_class: lower.reaches_zero,
        class: lower.class,
        lower_central_dims: lower.dims(),
        nilpotency_index: index,
        lines,
        pass,
    })
}

/// Bundled corpus of random members, as stored on disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Corpus {
    pub seed: u64,
    pub note: String,
    pub algebras: Vec<serde_json::Value>,
}

impl Corpus {
    pub fn algebras(&self) -> Result<Vec<FiniteDimAlgebra>> {
        self.algebras.iter().cloned().map(FiniteDimAlgebra::from_value).collect()
    }
}

/// Rejection-samples `count` algebras over ℚ with strictly upper-triangular structure
/// constants (`e_i e_j` only involves `e_k` with `k > max(i, j)`), keeping those that are
/// Novikov or bicommutative and have at least one nonzero product.
pub fn random_members(seed: u64, count: usize) -> Result<Corpus> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let varieties = [VarietySpec::builtin("novikov")?, VarietySpec::builtin("bicommutative")?];
    let field = FieldSpec::Rationals;
    let mut algebras = Vec::new();
    while algebras.len() < count {
        let n = rng.random_range(2..=5usize);
        let density = rng.random_range(0.15..0.6);
        let mut alg = FiniteDimAlgebra::zero(field, n);
        let mut nonzero = false;
        for i in 0..n {
            for j in 0..n {
                let mut pairs = Vec::new();
                for k in i.max(j) + 1..n {
                    if rng.random_bool(density) {
                        let c = rng.random_range(-2i64..=2);
                        pairs.push((k, field.from_i64(c)));
                    }
                }
                let v = SparseVector::from_pairs(pairs);
                nonzero |= !v.is_zero();
                alg.set_product(i, j, v)?;
            }
        }
        if !nonzero {
            continue;
        }
        let mut keep = false;
        for v in &varieties {
            keep |= check_membership(&alg, v)?.is_member();
        }
        if keep {
            algebras.push(alg.to_value());
        }
    }
    Ok(Corpus {
        seed,
        note: "ChaCha8 rejection sampling of strictly upper-triangular Novikov or bicommutative algebras".into(),
        algebras,
    })
}
