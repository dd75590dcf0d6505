use thiserror::Error;

/// Errors raised by the solver crate.
///
/// `InternalAssertion` is reserved for violations of invariants the
/// construction guarantees; seeing one on valid input is always a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(u32, u32),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: u32, n: usize },

    #[error("vertex sets overlap at vertex {0}")]
    OverlappingSets(u32),

    #[error("parameter must be positive, got {0}")]
    NonPositiveParameter(String),

    #[error("assignment has {got} entries but the graph has {want} vertices")]
    DimensionMismatch { got: usize, want: usize },

    #[error("support set does not match the fractional coordinates of the assignment")]
    SupportMismatch,

    #[error("vertex set is not a clique: edge {0}-{1} is missing")]
    NotAClique(u32, u32),

    #[error("clique of size {size} is smaller than the required {required}")]
    CliqueTooSmall { size: usize, required: usize },

    #[error("density hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("graph on {n} vertices exceeds the exhaustive-search cap {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Returns `Error::InternalAssertion` when a guaranteed invariant fails.
macro_rules! internal_check {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err($crate::error::Error::InternalAssertion(format!($($arg)*)));
        }
    };
}

pub(crate) use internal_check;
