use thiserror::Error;

use crate::kernelzoo::DomainPoint;
use crate::spectral::Inertia;

/// Errors raised by the kernel, spectral and classification layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point {point} lies outside the domain of kernel `{kernel}`")]
    OutsideDomain { kernel: String, point: DomainPoint },

    #[error("function `{function}` is undefined at {point}")]
    Undefined { function: String, point: DomainPoint },

    #[error("sampling scheme `{scheme}` cannot be used on the {domain} domain")]
    IncompatibleScheme { scheme: String, domain: String },

    #[error("could only place {placed} of {requested} points with minimum separation {min_separation:e}")]
    Separation {
        requested: usize,
        placed: usize,
        min_separation: f64,
    },

    #[error("Hermitian eigensolver did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("eigenpair {index} has residual {residual:e}, above the accepted {limit:e}")]
    Residual {
        index: usize,
        residual: f64,
        limit: f64,
    },

    #[error("Gram matrix is not positive definite (inertia {inertia})")]
    NotPositiveDefinite { inertia: Inertia },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown {kind} `{id}`; valid ids: {}", valid.join(", "))]
    UnknownId {
        kind: &'static str,
        id: String,
        valid: Vec<String>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
