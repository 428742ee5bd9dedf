use thiserror::Error;

/// Everything in this crate that can fail fails with one of these.
///
/// `InternalInconsistency` is special: it marks situations the recognition
/// theory says cannot happen (for example a non-bipartite clique incidence
/// graph on a graph that already passed every other check). It is never
/// downgraded to a normal refutation because seeing it means either a bug
/// or a counterexample, and both deserve a loud failure.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: u32, order: usize },

    #[error("self-loops are not allowed (vertex {0})")]
    SelfLoop(u32),

    #[error("endpoints must be distinct, got {0} twice")]
    EqualEndpoints(u32),

    #[error("no path between {a} and {b}")]
    Unreachable { a: u32, b: u32 },

    #[error("geodesic count {count} exceeds cap {cap}")]
    CapExceeded { count: u64, cap: u64 },

    #[error("geodesics have different lengths ({0} vs {1}) and no difference set")]
    LengthMismatch(usize, usize),

    #[error("pattern on {size} vertices exceeds the search cap of {cap}")]
    PatternTooLarge { size: usize, cap: usize },

    #[error("work budget exhausted")]
    BudgetExhausted,

    #[error("graph too large for canonical form: {order} vertices (limit {limit})")]
    TooLargeForCanonical { order: usize, limit: usize },

    #[error("precondition violated in {op}: {reason}")]
    Precondition { op: &'static str, reason: String },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn precondition(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Precondition {
            op,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
