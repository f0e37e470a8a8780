use thiserror::Error;

/// Errors raised by quiverlab operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("Cartan matrix is not of finite type")]
    NotFiniteType,

    #[error("group element has a singular block at vertex {0}")]
    SingularBlock(usize),

    #[error("operation requires the {expected} field, got {found}")]
    WrongField { expected: String, found: String },

    #[error("could not sample a point of the fiber after {attempts} attempts")]
    FiberSampleFailed { attempts: usize },

    #[error("chi-data is not balanced: {0}")]
    BalanceViolated(String),

    #[error("reflection at vertex {vertex} undefined: {reason}")]
    ReflectionUndefined { vertex: usize, reason: String },

    #[error("reflection along word failed after prefix {prefix:?}: {source}")]
    WordFailed {
        prefix: Vec<usize>,
        #[source]
        source: Box<Error>,
    },

    #[error("moment map mismatch: {0}")]
    MomentMismatch(String),

    #[error("no admissible subspace at vertex {0}: b_i is surjective and a_i is injective")]
    RankTooLarge(usize),

    #[error("range violation: {0}")]
    RangeViolation(String),

    #[error("enumeration of {required} points exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("unsupported prime modulus {0}")]
    UnsupportedPrime(u64),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
