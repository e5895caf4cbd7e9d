use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("δτ = {delta_tau} sits on an odd multiple of π; the suppression factor diverges")]
    PoleAtOddPi { delta_tau: f64 },

    #[error("quadrature did not converge on [{a}, {b}]: estimate {estimate}, error {error} after {panels} panels")]
    QuadratureNonConvergence {
        a: f64,
        b: f64,
        estimate: f64,
        error: f64,
        panels: usize,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("step too coarse: {0}")]
    StepTooCoarse(String),

    #[error("emission {emission} exceeds the perturbative limit {limit}")]
    NonPerturbative { emission: f64, limit: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
