use thiserror::Error;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Precondition,
    Unsupported,
    Verification,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
    #[error("{q} is not coprime to {n}")]
    NotCoprime { q: i64, n: i64 },
    #[error("modulus must be an odd positive integer, got {0}")]
    BadJacobiModulus(i64),
    #[error("modulus must be positive, got {0}")]
    BadModulus(i64),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("unsupported root system {0}")]
    UnsupportedLabel(String),
    #[error("vector {0} is not a root of {1}")]
    NotARoot(String, String),
    #[error("matrix does not stabilize the roots of {0}")]
    NotAnAutomorphism(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("element is not elliptic on {0}")]
    NotElliptic(String),
    #[error("numerator does not normalize the cyclic group generated by the denominator")]
    NotNormalizing,
    #[error("numerator does not stabilize R_w")]
    RwNotStable,
    #[error("roots are not orthogonal")]
    NotOrthogonal,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("{0} is required to be irreducible")]
    Reducible(String),
    #[error("no classified class matches this element of {0}")]
    UnknownClass(String),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("outside the supported domain: {0}")]
    Unsupported(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } | Error::UnknownName(_) => ErrorKind::Parse,
            Error::UnsupportedLabel(_) | Error::Unsupported(_) => ErrorKind::Unsupported,
            Error::Verification(_) => ErrorKind::Verification,
            _ => ErrorKind::Precondition,
        }
    }

    pub(crate) fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
