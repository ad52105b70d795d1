use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrobError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("generators {0} and {1} are not coprime")]
    NotCoprime(u64, u64),

    /// No nonnegative integer has at most p representations, so g_p and the
    /// sums over that set are undefined.
    #[error("no integer has at most {p} representations")]
    EmptySet { p: u64 },

    #[error("invalid weight lambda = {lambda}: {reason}")]
    InvalidWeight { lambda: i64, reason: &'static str },

    #[error("p = {p} is outside the closed-form range 0..={max}")]
    OutOfValidatedRange { p: u64, max: u64 },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl FrobError {
    /// Variant name, as printed by the command-line front end.
    pub fn name(&self) -> &'static str {
        match self {
            FrobError::InvalidInstance(_) => "InvalidInstance",
            FrobError::NotCoprime(..) => "NotCoprime",
            FrobError::EmptySet { .. } => "EmptySet",
            FrobError::InvalidWeight { .. } => "InvalidWeight",
            FrobError::OutOfValidatedRange { .. } => "OutOfValidatedRange",
            FrobError::DomainError(_) => "DomainError",
            FrobError::InternalInconsistency(_) => "InternalInconsistency",
        }
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, FrobError::InternalInconsistency(_))
    }
}

pub type Result<T> = std::result::Result<T, FrobError>;
