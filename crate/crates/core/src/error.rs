use thiserror::Error;

/// Errors raised by the geometric and numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("point {coords:?} does not lie on the {space}")]
    NotOnManifold { space: &'static str, coords: Vec<f64> },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("{what} = {value} outside the admissible range ({lo}, {hi})")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("quadrature too coarse: {0}")]
    TooCoarse(String),
    #[error("degenerate point pair: x and y coincide")]
    DegeneratePair,
    #[error("invalid phantom: {0}")]
    InvalidPhantom(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("method mismatch: {0}")]
    WrongMethod(String),
    #[error("parameter value hits a pole: {0}")]
    Pole(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("finite-difference stencil leaves the chart domain at {0:?}")]
    StencilOutsideDomain(Vec<f64>),
    #[error("data mismatch: {0}")]
    DataMismatch(String),
    #[error("series did not converge: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
