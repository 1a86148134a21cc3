use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A tensor failed one of its symmetry or trace invariants.
    #[error("symmetry violation: {what} (residual {residual:.3e})")]
    SymmetryViolation { what: String, residual: f64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("non-finite value in {0}")]
    NonFinite(String),

    /// Evaluation point outside the usable interior of a grid.
    #[error("point outside the evaluation domain: {0}")]
    OutOfDomain(String),

    /// The supplied data cannot decide the question asked.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn symmetry(what: impl Into<String>, residual: f64) -> Self {
        Error::SymmetryViolation {
            what: what.into(),
            residual,
        }
    }
}
