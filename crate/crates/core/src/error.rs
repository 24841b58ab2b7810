use thiserror::Error;

use crate::lagrangian::LambdaCertificate;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("edge id {id} out of range (m = {m})")]
    EdgeOutOfRange { id: usize, m: usize },

    #[error("{what}: n = {n} exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("contraction enumeration needs a positive minimum cut; the graph has a zero-capacity cut")]
    ZeroMinCut,

    #[error("feasible family is empty")]
    EmptyFamily,

    #[error("capacities do not fit in 128-bit fixed point after scaling")]
    Overflow,

    #[error("internal error: {message}")]
    Internal {
        message: String,
        certificate: Option<Box<LambdaCertificate>>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn internal(message: impl Into<String>) -> Self {
        Error::Internal {
            message: message.into(),
            certificate: None,
        }
    }
}
