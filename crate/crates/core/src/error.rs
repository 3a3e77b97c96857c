use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("field is not cyclotomic")]
    NotCyclotomic,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("leg mismatch: {0}")]
    LegMismatch(String),
    #[error("factor mismatch: {0}")]
    FactorMismatch(String),
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("bad field: {0}")]
    BadField(String),
    #[error("axiom failure: {0}")]
    AxiomFailure(String),
    #[error("invalid action: {0}")]
    ActionInvalid(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("{0}")]
    Gated(String),
    #[error("invalid file: {0}")]
    InvalidFile(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
