use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid group element: {0}")]
    InvalidElement(String),
    #[error("cocycle is not given in normal form")]
    NotNormalForm,
    #[error("not a projective character: {0}")]
    NotProjectiveCharacter(String),
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("components live in different categories")]
    MixedCategory,
    #[error("action is not projective: {0}")]
    NotProjective(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("nondiagonal input")]
    NondiagonalInput,
    #[error("reflection at {0} undefined along {1}")]
    UndefinedReflection(usize, usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("empty family: {0}")]
    EmptyFamily(String),
    #[error("parse error: {0}")]
    Parse(String),
}
