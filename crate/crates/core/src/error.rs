use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// Two independent computations of the same quantity disagree.
    #[error("internal inconsistency in {op}: {detail}")]
    Inconsistent { op: &'static str, detail: String },

    #[error("generator `{0}` is not registered in the class ring")]
    UnknownGenerator(String),

    #[error("elements belong to different class rings")]
    RingMismatch,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("root solver did not converge after {iterations} iterations (max residual {max_residual:e})")]
    SolverNonConvergence { iterations: usize, max_residual: f64 },

    #[error("leading coefficient vanishes at s = {0}")]
    LeadingVanishes(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }
}
