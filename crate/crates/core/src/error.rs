use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Input outside the mathematical domain of the operation.
    Domain,
    /// A bound or cap of the implementation was exceeded.
    Capability,
    /// A computed object failed an invariant it must satisfy.
    Invariant,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("capability limit exceeded: {0}")]
    Capability(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("incompatible system at prime {prime}: {reason}")]
    Validation { prime: u64, reason: String },
    #[error("rational reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("inconsistent input: {0}")]
    Inconsistency(String),
    #[error("construction failed: {0}")]
    Construction(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Domain(_) | Error::Validation { .. } => ErrorKind::Domain,
            Error::Capability(_) => ErrorKind::Capability,
            Error::Invariant(_)
            | Error::Reconstruction(_)
            | Error::Inconsistency(_)
            | Error::Construction(_) => ErrorKind::Invariant,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
