use thiserror::Error;

/// Errors raised by graph construction, parsing and the randomized builders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("retry budget exhausted after {attempts} attempts: {property}")]
    BudgetExhausted { property: String, attempts: u64 },
    #[error("block {block:?} is wild with respect to the pool")]
    NotTame { block: Vec<usize> },
    #[error("invalid candidate partition: {0}")]
    InvalidCandidate(String),
    #[error("no distinctive block available in family {0}")]
    NotDistinctive(String),
    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
