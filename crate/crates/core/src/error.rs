use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate channel: user {user} has an all-zero composite channel")]
    DegenerateChannel { user: usize },

    #[error("infeasible power balancing: {0}")]
    InfeasibleBalancing(String),

    #[error("infeasible association: {0}")]
    Infeasible(String),

    #[error("exhaustive search over {assignments} assignments exceeds the limit of {limit}; use the greedy association instead")]
    ExhaustiveLimit { assignments: u128, limit: u64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
