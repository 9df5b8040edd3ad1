use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph on {requested} vertices exceeds the 64-vertex capacity")]
    Capacity { requested: usize },

    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("loop at vertex {vertex}")]
    Loop { vertex: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed graph6 string {text:?}: {reason}")]
    Graph6 { text: String, reason: String },

    #[error("n = {n} exceeds the enumeration ceiling {ceiling}")]
    CeilingExceeded { n: usize, ceiling: usize },

    #[error("no {family}-free graph on {n} vertices exists")]
    NoAdmissibleGraph { n: usize, family: String },

    #[error("report serialization failed: {0}")]
    Serialization(String),
}
