use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown diagram type `{0}`")]
    UnknownType(String),
    #[error("rank {rank} is not allowed for family {family}")]
    RankOutOfRange { family: String, rank: usize },
    #[error("node {0} is not a node of the diagram")]
    NodeOutOfRange(usize),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("not a root homomorphism: {0}")]
    NotAHom(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("excluded case: {0}")]
    ExcludedCase(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// Two independent computations disagreed. Always a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
