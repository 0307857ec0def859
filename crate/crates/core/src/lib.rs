//! Exact computations with commutator ideals in relatively free nonassociative algebras.

pub mod error;
pub mod expr;
pub mod field;
pub mod linalg;
pub mod magma;
pub mod ideal;
pub mod report;
pub mod structconst;
pub mod variety;

pub use error::{Error, Result};
pub use expr::{builtin, expand, parse, Expr, Identity, ParseError, BUILTINS};
pub use field::{FieldSpec, Scalar};
pub use linalg::{EchelonBasis, Membership, SparseVector};
pub use magma::{enumerate_contexts, enumerate_monomials, Alphabet, Context, Monomial, Multidegree, Polynomial, Side};
pub use variety::{
    component_basis, relation_space, verify_identity, Component, FreeAlgebra, IdentityVerdict, VarietySpec,
};
pub use ideal::{
    check_theorem, AlgebraSlice, ChainKind, ChainReport, Check, GradedSubspace, Inclusion, Status, TheoremParams,
    TheoremReport, THEOREMS,
};
pub use structconst::{
    audit, check_membership, commutator_ideal_nilpotency, lie_series_fd, lower_central_fd, random_members,
    AuditReport, Corpus, FdChain, FiniteDimAlgebra, MembershipVerdict,
};
pub use report::{Envelope, SearchTarget, Table};
