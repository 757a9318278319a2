use thiserror::Error;

/// Errors raised by the library.
///
/// Every variant names the stage that failed so the command-line front end can
/// attribute failures. [`Error::is_input_error`] separates malformed input from
/// mathematical failures such as a Hilbert function that never stabilized.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("exponent {0} exceeds 2^31")]
    ExponentOverflow(u64),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("relation `{0}` is not homogeneous for the declared grading")]
    NotHomogeneous(String),

    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("monomial orders differ between basis and operand")]
    OrderMismatch,

    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("ideal is not m-primary: {0}")]
    NotMPrimary(String),

    #[error("no stabilization within n = {max_n} (kind {kind}); raise the sampling cap")]
    NoStabilization { kind: String, max_n: usize },

    #[error("table growth degree disagrees with dimension {dim}: {detail}")]
    DegreeMismatch { dim: usize, detail: String },

    #[error("resource cap exceeded in {stage}: {detail}")]
    ResourceCap { stage: String, detail: String },

    #[error("retry budget exhausted while {stage}")]
    RetryBudget { stage: String },

    #[error("{operation} requires {requirement}")]
    Precondition {
        operation: String,
        requirement: String,
    },
}

impl Error {
    /// Malformed input as opposed to a computation that could not finish.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::UnknownVariable(_)
                | Error::ExponentOverflow(_)
                | Error::NotPrime(_)
                | Error::InvalidRing(_)
                | Error::NotHomogeneous(_)
                | Error::RingMismatch
                | Error::InvalidArgument(_)
                | Error::NotMPrimary(_)
                | Error::Precondition { .. }
        )
    }

    pub(crate) fn precondition(operation: &str, requirement: &str) -> Self {
        Error::Precondition {
            operation: operation.to_string(),
            requirement: requirement.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
