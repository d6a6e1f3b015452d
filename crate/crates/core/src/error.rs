use alloc::string::String;

/// Errors raised by the library. Every fallible operation returns [`Result`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ground set of size {size} exceeds the configured limit {limit}")]
    SizeLimit { size: usize, limit: usize },
    #[error("ground sets differ: {left} vs {right}")]
    GroundMismatch { left: usize, right: usize },
    #[error("operands live in P_{left} and P_{right}")]
    KMismatch { left: usize, right: usize },
    #[error("ground set of size {0} is odd, so it is not a diagram")]
    NotDiagram(usize),
    #[error("cannot parse partition: {0}")]
    Parse(String),
    #[error("index {index} out of range 1..={k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("coefficient at {partition} grows like N^{exponent}")]
    Divergent { partition: String, exponent: i32 },
    #[error("fluctuation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
