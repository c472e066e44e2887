use thiserror::Error;

/// Errors raised by the geometric and algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point lies within the center guard of the inversion ellipse")]
    CenterSingular,
    #[error("point is off the line (distance {distance:e})")]
    OffLine { distance: f64 },
    #[error("degenerate collinear quadruple: {0}")]
    DegenerateQuad(&'static str),
    #[error("point coincides with the midpoint of the diameter; its conjugate is at infinity")]
    MidpointSingular,
    #[error("unsupported curve degree {0} (expected 1 or 2)")]
    UnsupportedDegree(u32),
    #[error("all coefficients vanish")]
    ZeroCurve,
    #[error("image curve degenerates to a constant")]
    DegenerateImage,
    #[error("origin is a singular point of the curve")]
    SingularAtOrigin,
    #[error("curve does not pass through the center")]
    NotThroughCenter,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("every sample fell inside the center guard")]
    EmptyResult,
    #[error("invalid chain spec: {0}")]
    InvalidSpec(String),
    #[error("index {index} out of range 1..={count}")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("invalid ellipse: {0}")]
    InvalidEllipse(String),
    #[error("invalid value: {0}")]
    InvalidValue(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
