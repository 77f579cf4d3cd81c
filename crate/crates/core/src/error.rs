use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operands live in different groups: {left:?} vs {right:?}")]
    GroupMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCap { order: u128, cap: usize },

    #[error("element out of range: {0}")]
    OutOfRange(String),

    #[error("value {modulus} is not on the unit circle")]
    NonUnit { modulus: f64 },

    #[error("{0} must be nonempty")]
    EmptySet(&'static str),

    #[error("{what}: {got} exceeds the limit {limit}")]
    Guard { what: &'static str, limit: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
