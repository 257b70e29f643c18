//! Grammar builders: a RePair compressor and synthetic corpus generators.

mod generate;
mod repair;

pub use generate::{fibonacci_word, repetitive_text, repetitive_text_over, FIBONACCI_MAX_LEN};
pub use repair::repair_compress;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompressError {
    #[error("empty text")]
    EmptyText,
    #[error("text of {0} bytes exceeds the 32-bit position space")]
    TextTooLong(usize),
    #[error("fibonacci word order must be at least 1")]
    ZeroOrder,
    #[error("fibonacci word of order {order} exceeds the {limit}-byte budget")]
    OverBudget { order: u32, limit: u64 },
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(&'static str),
}
