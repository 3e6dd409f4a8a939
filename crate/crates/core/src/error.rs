use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph has {n} vertices, oracle budget is {budget}")]
    BudgetExceeded { n: usize, budget: usize },

    #[error("input is not a tree: {0}")]
    NotATree(String),

    #[error("graph is not connected")]
    NotConnected,

    #[error("invalid tree decomposition: {0}")]
    InvalidTreeDecomposition(String),

    #[error("invalid treedepth decomposition: {0}")]
    InvalidTreedepthDecomposition(String),

    #[error("invalid greedy decomposition: {0}")]
    InvalidGreedy(String),

    #[error("lift failed at skeleton edge ({parent}, {child}): {msg}")]
    LiftFailed {
        parent: usize,
        child: usize,
        msg: String,
    },

    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: i64 },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
