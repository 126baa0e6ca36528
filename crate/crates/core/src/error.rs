use thiserror::Error;

use crate::oddcut::RGraphFailure;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("edge id {edge} out of range for a graph with {m} edges")]
    InvalidEdge { edge: usize, m: usize },

    #[error("loop at vertex {0} (loops are not allowed)")]
    Loop(usize),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("parity error: {0}")]
    Parity(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("not a {r}-graph: {reason}")]
    NotRGraph { r: usize, reason: RGraphFailure },

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("construction error: {0}")]
    Construction(String),

    #[error("integrity error: {0}")]
    Integrity(String),
}
