use thiserror::Error;

/// Errors raised by the geometric and combinatorial kernels.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The input is not the f-vector (or similar data) of any simplicial polytope.
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),

    /// Two independent computations disagreed. Always a bug.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    /// A statement that is a theorem for the given input class failed to hold.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("{file}:{line}:{column}: {message}")]
    Parse {
        file: String,
        line: usize,
        column: usize,
        message: String,
    },

    /// Well-formed input that breaks a dataset rule, such as a repeated id.
    #[error("invalid dataset: {0}")]
    Validation(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
