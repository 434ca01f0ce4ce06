use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("distribution has an infinite mean")]
    InfiniteMean,

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("point {x} lies outside the window [{tau1}, {tau2}]")]
    OutOfWindow { x: f64, tau1: f64, tau2: f64 },

    #[error("degenerate window: survival mass {mass:e} inside the window")]
    DegenerateWindow { mass: f64 },

    #[error("quadrature did not converge (value {value}, error estimate {error:e})")]
    NotConverged { value: f64, error: f64 },

    #[error("integral diverges: {0}")]
    InfiniteResult(String),

    #[error("divergence is infinite: reference survival vanishes inside the window at x = {x}")]
    DivergentDivergence { x: f64 },

    #[error("transformation is not increasing (derivative {derivative} at x = {x})")]
    NonMonotoneTransform { x: f64, derivative: f64 },

    #[error("non-finite sample {value} at x = {x}")]
    NonFiniteSample { x: f64, value: f64 },

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("line {line}: {message}")]
    DataLine { line: usize, message: String },
}
