//! Serializable report documents and their text tables.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::expr::Identity;
use crate::field::FieldSpec;
use crate::ideal::{check_theorem, AlgebraSlice, ChainKind, Status, TheoremParams, TheoremReport};
use crate::magma::Multidegree;
use crate::structconst::{AuditReport, MembershipVerdict};
use crate::variety::{verify_identity, FreeAlgebra, IdentityVerdict, VarietySpec};

pub const SCHEMA_VERSION: u32 = 1;

/// A report with its schema version and the command that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: u32,
    pub command: String,
    pub report: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(command: &str, report: T) -> Self {
        Envelope {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            report,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

pub trait Table {
    fn table(&self) -> String;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisRow {
    pub multidegree: String,
    pub spanning: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub variety: String,
    pub field: String,
    pub generators: usize,
    pub cap: u32,
    pub multilinear: bool,
    pub rows: Vec<BasisRow>,
}

/// Quotient dimensions at every multidegree up to `cap`, or only at `(1,...,1)` when
/// `multilinear` is set.
pub fn basis_report(
    variety: &VarietySpec,
    field: FieldSpec,
    k: usize,
    cap: u32,
    multilinear: bool,
    max_monomials: usize,
) -> Result<BasisReport> {
    let algebra = FreeAlgebra::shared(variety, field, k, max_monomials);
    let degrees: Vec<Multidegree> = if multilinear {
        Multidegree::up_to(k, cap)
            .into_iter()
            .filter(|d| d.is_multilinear() && d.total() as usize == k)
            .collect()
    } else {
        algebra.build_up_to(cap)?;
        Multidegree::up_to(k, cap)
    };
    let mut rows = Vec::new();
    for mu in degrees {
        let c = algebra.component(&mu)?;
        rows.push(BasisRow {
            multidegree: mu.to_string(),
            spanning: c.monomials().len(),
            dim: c.quotient_dim(),
        });
    }
    Ok(BasisReport {
        variety: variety.name().to_string(),
        field: field.label(),
        generators: k,
        cap,
        multilinear,
        rows,
    })
}

impl Table for BasisReport {
    fn table(&self) -> String {
        let mut out = format!(
            "variety {} over {}, {} generators, degree <= {}{}\n",
            self.variety,
            self.field,
            self.generators,
            self.cap,
            if self.multilinear { ", multilinear" } else { "" }
        );
        let width = self.rows.iter().map(|r| r.multidegree.len()).max().unwrap_or(0);
        for r in &self.rows {
            let _ = writeln!(out, "{:<width$}: {}", r.multidegree, r.dim);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub variety: String,
    pub field: String,
    pub identity: String,
    pub expression: String,
    pub multilinear: bool,
    pub verdict: IdentityVerdict,
}

pub fn verify_report(
    variety: &VarietySpec,
    field: FieldSpec,
    identity: &Identity,
    cap: u32,
    max_monomials: usize,
) -> Result<VerifyReport> {
    let verdict = verify_identity(variety, field, identity, cap, max_monomials)?;
    Ok(VerifyReport {
        variety: variety.name().to_string(),
        field: field.label(),
        identity: identity.name().to_string(),
        expression: identity.source().to_string(),
        multilinear: identity.is_multilinear(),
        verdict,
    })
}

impl Table for VerifyReport {
    fn table(&self) -> String {
        let mut out = format!(
            "identity {} := {}\nvariety {} over {}\n",
            self.identity, self.expression, self.variety, self.field
        );
        match &self.verdict {
            IdentityVerdict::Holds { multidegrees_checked } => {
                let _ = writeln!(out, "HOLDS ({multidegrees_checked} multidegrees checked)");
            }
            IdentityVerdict::Fails {
                substitution,
                multidegree,
                residual,
            } => {
                let _ = writeln!(out, "FAILS at multidegree {multidegree}");
                for (v, m) in substitution {
                    let _ = writeln!(out, "  {v} := {m}");
                }
                let _ = writeln!(out, "  residual: {residual}");
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRow {
    pub term: String,
    /// Dimension in total degree 1, 2, ... up to the cap.
    pub dims: Vec<usize>,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDoc {
    pub variety: String,
    pub field: String,
    pub generators: usize,
    pub cap: u32,
    pub series: ChainKind,
    pub rows: Vec<ChainRow>,
    pub vanishes_at: Option<usize>,
    pub stabilizes_at: Option<usize>,
    /// Each term lies in the ideal generated by its predecessor.
    pub descending: bool,
}

/// The first `cap` terms of a chain, with their graded dimensions.
pub fn chain_report(slice: &AlgebraSlice, kind: ChainKind) -> Result<ChainDoc> {
    let n = slice.cap() as usize;
    let chain = match kind {
        ChainKind::LowerCentral => slice.lower_central_chain(n)?,
        ChainKind::LiePowers => slice.lie_power_series(n)?,
    };
    let mut descending = true;
    for w in chain.terms.windows(2) {
        let closed = slice.ideal_closure(&w[0])?;
        descending &= slice.check_inclusion(&w[1], &closed)?.holds();
    }
    let rows = chain
        .dims
        .iter()
        .enumerate()
        .map(|(i, d)| ChainRow {
            term: match kind {
                ChainKind::LowerCentral => format!("H_{}", i + 1),
                ChainKind::LiePowers => format!("A_[{}]", i + 1),
            },
            dims: d.clone(),
            total: d.iter().sum(),
        })
        .collect();
    Ok(ChainDoc {
        variety: slice.variety().name().to_string(),
        field: slice.field().label(),
        generators: slice.generators(),
        cap: slice.cap(),
        series: kind,
        rows,
        vanishes_at: chain.vanishes_at,
        stabilizes_at: chain.stabilizes_at,
        descending,
    })
}

fn opt(v: Option<usize>) -> String {
    v.map_or("-".into(), |x| x.to_string())
}

impl Table for ChainDoc {
    fn table(&self) -> String {
        let mut out = format!(
            "{} series of {} over {}, {} generators, degree <= {}\n",
            self.series, self.variety, self.field, self.generators, self.cap
        );
        let width = self.rows.iter().map(|r| r.term.len()).max().unwrap_or(4).max(4);
        let _ = write!(out, "{:<width$}", "term");
        for d in 1..=self.cap {
            let _ = write!(out, " {:>6}", format!("d={d}"));
        }
        let _ = writeln!(out, " {:>7}", "total");
        for r in &self.rows {
            let _ = write!(out, "{:<width$}", r.term);
            for d in &r.dims {
                let _ = write!(out, " {d:>6}");
            }
            let _ = writeln!(out, " {:>7}", r.total);
        }
        let _ = writeln!(
            out,
            "vanishes at {}, stabilizes at {}, descending {}",
            opt(self.vanishes_at),
            opt(self.stabilizes_at),
            self.descending
        );
        out
    }
}

impl Table for TheoremReport {
    fn table(&self) -> String {
        let p = &self.params;
        let params: Vec<String> = [("p", p.p), ("q", p.q), ("i", p.i), ("j", p.j), ("m", p.m)]
            .iter()
            .filter_map(|(n, v)| v.map(|v| format!("{n}={v}")))
            .collect();
        let mut out = format!(
            "{} on {} over {}, {} generators, degree <= {} [{}]\n",
            self.theorem,
            self.variety,
            self.field,
            self.generators,
            self.cap,
            params.join(" ")
        );
        let width = self.checks.iter().map(|c| c.claim.len()).max().unwrap_or(0);
        for c in &self.checks {
            let _ = write!(out, "  {:<width$}  {}", c.claim, c.status);
            if c.status == Status::Informational {
                let _ = write!(out, " (holds: {})", c.holds);
            }
            if let Some(m) = &c.multidegree {
                let _ = write!(out, " at {m}");
            }
            if let Some(n) = &c.note {
                let _ = write!(out, "; {n}");
            }
            out.push('\n');
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "    witness: {w}");
            }
        }
        let _ = writeln!(out, "{}", self.status);
        out
    }
}

impl Table for AuditReport {
    fn table(&self) -> String {
        let mut out = format!("algebra of dimension {} over {}\n", self.dim, self.field);
        for m in &self.membership {
            match &m.verdict {
                MembershipVerdict::Member => {
                    let _ = writeln!(out, "  {:<14} member", m.variety);
                }
                MembershipVerdict::Fails {
                    identity,
                    tuple,
                    residual,
                } => {
                    let t: Vec<String> = tuple.iter().map(|i| format!("e{i}")).collect();
                    let _ = writeln!(
                        out,
                        "  {:<14} fails {} at ({}): {}",
                        m.variety,
                        identity,
                        t.join(","),
                        residual
                    );
                }
            }
        }
        let _ = writeln!(
            out,
            "  lie series dims {:?}, lie nilpotent {}, lie class {}",
            self.lie_dims,
            self.lie_nilpotent,
            opt(self.lie_class)
        );
        let _ = writeln!(
            out,
            "  lower central dims {:?}, finite class {}, class {}",
            self.lower_central_dims,
            self.finite_class,
            opt(self.class)
        );
        let _ = writeln!(out, "  nilpotency index of A o A: {}", opt(self.nilpotency_index));
        for l in &self.lines {
            let _ = writeln!(out, "  {}: {} ({})", l.claim, l.status, l.detail);
        }
        let _ = writeln!(out, "{}", if self.pass { "PASS" } else { "FAIL" });
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchTarget {
    BicomRightNilpotency,
    AssocEvenEven,
}

impl SearchTarget {
    fn theorem(&self) -> &'static str {
        match self {
            SearchTarget::BicomRightNilpotency => "bicom_not_right_nilpotent",
            SearchTarget::AssocEvenEven => "assoc_even_even",
        }
    }

    fn variety(&self) -> &'static str {
        match self {
            SearchTarget::BicomRightNilpotency => "bicommutative",
            SearchTarget::AssocEvenEven => "associative",
        }
    }

    fn min_degree(&self) -> u32 {
        match self {
            SearchTarget::BicomRightNilpotency => 3,
            SearchTarget::AssocEvenEven => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchPoint {
    pub generators: usize,
    pub cap: u32,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub report: Option<TheoremReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub target: SearchTarget,
    pub field: String,
    pub generators: usize,
    pub cap: u32,
    pub points: Vec<SearchPoint>,
    pub outcome: String,
    pub status: Status,
}

/// Runs a search target for every generator count `2..=gens` at the given cap, stopping
/// at the first violation.
pub fn search(target: SearchTarget, field: FieldSpec, gens: usize, cap: u32, max_monomials: usize) -> Result<SearchReport> {
    let variety = VarietySpec::builtin(target.variety())?;
    let mut points = Vec::new();
    for k in 2..=gens.max(2) {
        if cap < target.min_degree() {
            points.push(SearchPoint {
                generators: k,
                cap,
                status: Status::Inconclusive,
                report: None,
                note: Some(format!("nothing to check below degree {}", target.min_degree())),
            });
            continue;
        }
        let slice = AlgebraSlice::with_limit(&variety, field, k, cap, max_monomials)?;
        let report = check_theorem(target.theorem(), &slice, &TheoremParams::default())?;
        let status = report.status;
        points.push(SearchPoint {
            generators: k,
            cap,
            status,
            report: Some(report),
            note: None,
        });
        if status == Status::Violated {
            break;
        }
    }
    let violated = points.iter().any(|p| p.status == Status::Violated);
    let (outcome, status) = match target {
        SearchTarget::AssocEvenEven if violated => ("VIOLATION-FOUND", Status::Violated),
        SearchTarget::AssocEvenEven => ("NONE-FOUND-AT-CAP", Status::Inconclusive),
        SearchTarget::BicomRightNilpotency if violated => ("RIGHT-NILPOTENT-WITHIN-CAP", Status::Violated),
        SearchTarget::BicomRightNilpotency => {
            let all_nonzero = points
                .iter()
                .all(|p| p.report.as_ref().is_some_and(|r| r.checks.iter().all(|c| c.holds)));
            if all_nonzero {
                let asserted = points.iter().any(|p| p.status == Status::Verified);
                ("NOT-NILPOTENT-UP-TO-CAP", if asserted { Status::Verified } else { Status::Informational })
            } else if points.iter().all(|p| p.report.is_none()) {
                ("NONE-FOUND-AT-CAP", Status::Inconclusive)
            } else {
                ("RIGHT-NILPOTENT-WITHIN-CAP", Status::Informational)
            }
        }
    };
    Ok(SearchReport {
        target,
        field: field.label(),
        generators: gens,
        cap,
        points,
        outcome: outcome.to_string(),
        status,
    })
}

impl Table for SearchReport {
    fn table(&self) -> String {
        let name = match self.target {
            SearchTarget::BicomRightNilpotency => "bicom-right-nilpotency",
            SearchTarget::AssocEvenEven => "assoc-even-even",
        };
        let mut out = format!(
            "search {name} over {}, generators <= {}, degree <= {}\n",
            self.field, self.generators, self.cap
        );
        for p in &self.points {
            let _ = write!(out, "  k={} D={}: {}", p.generators, p.cap, p.status);
            if let Some(n) = &p.note {
                let _ = write!(out, " ({n})");
            }
            out.push('\n');
            if let Some(r) = &p.report {
                for c in &r.checks {
                    let _ = write!(out, "    {}: {}", c.claim, if c.holds { "holds" } else { "fails" });
                    if let Some(n) = &c.note {
                        let _ = write!(out, "; {n}");
                    }
                    out.push('\n');
                    if let (Some(m), Some(w)) = (&c.multidegree, &c.witness) {
                        let _ = writeln!(out, "      at {m}: {w}");
                    }
                }
            }
        }
        let _ = writeln!(out, "{}", self.outcome);
        out
    }
}
