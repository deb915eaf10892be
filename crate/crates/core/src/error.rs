//! Error type shared across the library.

use crate::invariants::BettiTable;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("zero polynomial input")]
    ZeroInput,
    #[error("not homogeneous: weighted degrees {0:?} occur")]
    NotHomogeneous(Vec<i64>),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unit ideal has no codimension")]
    UnitIdeal,
    #[error("matrix is not skew-symmetric with zero diagonal")]
    NotSkew,
    #[error("matrix entry is not linear with constant coefficients")]
    NonLinearEntry,
    #[error("matrix entries must be linear forms")]
    NotLinear,
    #[error("expected codimension {expected}, found {found}")]
    WrongCodimension { expected: i64, found: i64 },
    #[error("vector does not lie in the module")]
    NotInModule,
    #[error("membership lift failed: {0}")]
    LiftFailure(String),
    #[error("structural identity failed: {0}")]
    IdentityFailure(String),
    #[error("hypersurface is not smooth: {0}")]
    NotSmooth(String),
    #[error("module of logarithmic derivations is not free")]
    NotFree(BettiTable),
    #[error("input is not a regular sequence")]
    NotRegularSequence,
    #[error("generators do not share a single weighted degree")]
    UnequalDegrees,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("reduction step budget exhausted")]
    Timeout,
}
