use thiserror::Error;

/// Errors raised by the algebraic and numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root system type {family}{rank}: {reason}")]
    InvalidType {
        family: String,
        rank: usize,
        reason: String,
    },
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("weight {0} is not dominant integral")]
    NotDominantIntegral(String),
    #[error("{0} is not in the root lattice")]
    NotInRootLattice(String),
    #[error("point {0} lies outside the closed fundamental alcove")]
    OutsideAlcove(String),
    #[error("weight {weight} is not in the level-{level} alcove")]
    NotInLevelAlcove { weight: String, level: i64 },
    #[error("level must be positive for this operation, got {0}")]
    NonPositiveLevel(String),
    #[error("affine alcove reduction did not terminate after {0} sweeps")]
    NoConvergence(usize),
    #[error("truncation N = {given} is too small; at least {required} is needed")]
    InsufficientTruncation { given: u32, required: u32 },
    #[error("mode at energy {energy} lies outside truncation N = {truncation}")]
    OutsideTruncation { energy: i64, truncation: u32 },
    #[error("operator dimension {dim} exceeds the configured cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error("character is not W_H-symmetrizable: {0}")]
    NotSymmetrizable(String),
    #[error("centralizer convention breach: {0}")]
    ConventionBreach(String),
    #[error("eta {eta} is not integral at level {level} (k*xi must lie in the weight lattice)")]
    NonIntegralClass { eta: String, level: i64 },
    #[error("subalgebra is not of finite type: {0}")]
    NotFiniteSubalgebra(String),
    #[error("eigenvalues inside the ambiguity band: {0}")]
    Ambiguous(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
