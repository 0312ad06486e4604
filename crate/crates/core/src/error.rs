use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different coefficient fields")]
    MixedFields,
    #[error("operands live over different rings")]
    MixedRings,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("exponent overflow (limit {} per variable)", u16::MAX)]
    DegreeOverflow,
    #[error("input is not graded: {0}")]
    NotGraded(String),
    #[error("zero element in sequence")]
    ZeroElement,
    #[error("bad bounds: {0}")]
    BadBounds(String),
    #[error("lifting failed: {0}")]
    LiftFailure(String),
    #[error("window not stabilized by stage {stage_max}: degrees {degrees:?}")]
    UnstableWindow { stage_max: usize, degrees: Vec<i64> },
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
