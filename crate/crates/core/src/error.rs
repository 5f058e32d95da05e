use thiserror::Error;

/// Errors raised by operators, norms and verifiers.
///
/// Gate violations carry the name of the violated admissibility condition so
/// front ends can report it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("invalid parameter `{name}`: {detail}")]
    InvalidParameter { name: &'static str, detail: String },

    #[error("gate `{gate}` violated: {detail}")]
    Gate { gate: &'static str, detail: String },

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("invalid Young function: {0}")]
    InvalidYoungFunction(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, detail: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            detail: detail.into(),
        }
    }

    pub(crate) fn gate(gate: &'static str, detail: impl Into<String>) -> Self {
        Error::Gate {
            gate,
            detail: detail.into(),
        }
    }

    /// Name of the violated gate, if this is a gate error.
    pub fn gate_name(&self) -> Option<&'static str> {
        match self {
            Error::Gate { gate, .. } => Some(gate),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
