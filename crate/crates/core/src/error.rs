use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    OutOfRange { u: usize, v: usize, n: usize },
    #[error("edge ({v}, {v}) is a loop")]
    Loop { v: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// Errors raised by the reduction machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A state the correctness argument rules out; always a bug.
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
    #[error("unsupported color count k = {0}; the solver requires k = 5")]
    UnsupportedK(u8),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("color count k = {0} outside 1..=8")]
    BadK(u8),
    #[error("{lists} lists given for {n} vertices")]
    ListCount { lists: usize, n: usize },
    #[error("list of vertex {v} mentions a color above k = {k}")]
    ColorOutOfRange { v: usize, k: u8 },
}
