//! Exact symbolic workbench for locally bounded rational functions on the
//! real plane.
//!
//! The kernel works over the real algebraic numbers: rational arithmetic,
//! univariate and sparse multivariate polynomials, real root isolation and
//! extension towers.  On top of that sit reduced rational functions, bounded
//! Puiseux arcs, the point-blowup resolution engine that decides local
//! boundedness and computes exact value sets, and the derived geometric
//! queries (zero sets, inclusion, Łojasiewicz exponents, radical membership,
//! Nullstellensatz witnesses) together with the higher-dimensional zero-set
//! encoders.
//!
//! No floating point is used anywhere in a decision path; interval
//! refinement with rational endpoints is the only numeric accelerator.

pub mod alg;
pub mod arcs;
pub mod construct;
pub mod geometry;
pub mod mpoly;
pub mod parse;
pub mod rat;
pub mod ratfunc;
pub mod realzeros;
pub mod report;
pub mod resolve;
pub mod unipoly;

/// Errors shared across the workbench.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    OutsideDomain,
    #[error("operation is only available in two variables (got arity {arity})")]
    UnsupportedDimension { arity: usize },
    #[error("substituted denominator is identically zero")]
    IdenticallyZeroDenominator,
    #[error("all arc entries are constant")]
    ConstantArc,
    #[error("arc entry has a negative exponent")]
    UnboundedArc,
    #[error("arc lies inside the indeterminacy set of the function")]
    ArcInsideIndeterminacy,
    #[error("resolution did not terminate within depth {limit}")]
    DepthExceeded { limit: u32 },
    #[error("function is not locally bounded")]
    NotLocallyBounded,
    #[error("no exponent up to {n_max} certifies the quotient")]
    Exhausted { n_max: u32 },
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Shorthand used by the kernel when an internal invariant fails.
pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
