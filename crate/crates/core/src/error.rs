use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The selected edges do not cover the vertex set of the host.
    #[error("selection is not a cover: vertex {missing} is uncovered")]
    NotACover { missing: u32 },

    #[error("{what} is {actual}, which exceeds the limit of {limit}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("edge index {index} out of range for a hypergraph with {len} edges")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An internal consistency check failed. Seeing this means a bug.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_limit(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        Err(Error::SizeLimit {
            what,
            limit,
            actual,
        })
    } else {
        Ok(())
    }
}
