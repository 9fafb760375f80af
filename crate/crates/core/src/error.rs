use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial must be monic with degree at least 1")]
    NotMonic,
    #[error("polynomial has no real root greater than one")]
    NoRootAboveOne,
    #[error("hint interval contains {0} real roots above one, expected exactly one")]
    AmbiguousHint(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible modulo a reducible defining polynomial")]
    NotInvertible,
    #[error("value outside the domain of the digit map: {0}")]
    DomainError(String),
    #[error("base is not classified within the orbit cap: {0}")]
    Unclassified(String),
    #[error("expansion hit the boundary of the digit-map domain within the cap")]
    BoundaryCase,
    #[error("parameters outside the supported class: {0}")]
    OutOfClass(String),
    #[error("alphabet overflow: {0}")]
    AlphabetOverflow(String),
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(usize, usize),
    #[error("no fixed-point seed: {0}")]
    NoFixedSeed(String),
    #[error("window too small: factor sets did not saturate at radius {0}")]
    WindowTooSmall(usize),
    #[error("invalid digits: {0}")]
    InvalidDigits(String),
    #[error("window mismatch: {0}")]
    WindowMismatch(String),
    #[error("index {index} out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
