use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("map is not well defined on the quotient: {0}")]
    WellDefinedness(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("matrix does not intertwine the module actions: {0}")]
    NotAModuleMap(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("invalid resolution: {0}")]
    InvalidResolution(String),

    #[error("construction failed: {0}")]
    ConstructionFailure(String),

    #[error("diagram chase failed: {0}")]
    ChaseFailure(String),

    #[error("connecting map in degree zero is not surjective: {0}")]
    NotEpic(String),

    #[error("object is not acyclic for the functor: {0}")]
    AcyclicityFailure(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
