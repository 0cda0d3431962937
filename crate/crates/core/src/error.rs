use alloc::string::String;

use crate::partition::Partition;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at index {index}: {reason}")]
    Parse { index: usize, reason: String },

    #[error("dimension mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },

    #[error("{0} is not a noncrossing partition")]
    Crossing(Partition),

    #[error("order violation: {lower} is not finer than {upper}")]
    Order { lower: Partition, upper: Partition },

    #[error("capacity exceeded: {what} (limit {limit})")]
    Capacity { what: String, limit: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("cross-check mismatch in {0}")]
    CrossCheck(&'static str),
}
