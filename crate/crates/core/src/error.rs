use thiserror::Error;

use crate::surfaces::{Regime, SurfaceSpec};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("elements belong to different surfaces ({left} and {right})")]
    AmbientMismatch {
        left: SurfaceSpec,
        right: SurfaceSpec,
    },

    #[error("the trivial element has no primitive root")]
    TrivialElement,

    #[error("operation `{operation}` is not defined in the {regime} regime")]
    UnsupportedRegime {
        operation: &'static str,
        regime: Regime,
    },

    #[error("irregular polyline: {0}")]
    IrregularPolyline(String),

    #[error("degenerate crossing: {0}")]
    DegenerateCrossing(String),

    #[error("curve model `{model}` cannot be drawn on {surface}")]
    ModelMismatch { model: String, surface: SurfaceSpec },

    #[error("homotopy degree must be at least 2, got {0}")]
    DegreeTooSmall(u32),

    #[error("invalid search bound: {0}")]
    InvalidBound(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
