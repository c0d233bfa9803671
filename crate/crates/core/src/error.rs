use thiserror::Error;

use crate::lattice::SurfaceKind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("surface mismatch: {0:?} vs {1:?}")]
    SurfaceMismatch(SurfaceKind, SurfaceKind),

    #[error("unbound variables while evaluating `{0}`")]
    Unbound(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("class has vanishing charge here")]
    VanishingCharge,

    #[error("ample condition violated: {0}")]
    NotAmple(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("proportional classes: wall is everywhere/nowhere")]
    ProportionalClasses,

    #[error("concentration assumption fails for ({0},{1})")]
    Concentration(usize, usize),

    #[error("height function with level -1 undefined: no arrows into the tilted vertex")]
    NoIncomingArrows,

    #[error("class not in integral span")]
    NotIntegral,

    #[error("unsupported collection shape: {0}")]
    UnsupportedShape(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
