use thiserror::Error;

/// Errors raised by the model, solvers and oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{field} must be strictly positive (got {value})")]
    NonPositive { field: &'static str, value: f64 },

    #[error("{field} must be finite (got {value})")]
    NonFinite { field: &'static str, value: f64 },

    #[error("contact angle {0} rad is outside [0, pi]")]
    ContactAngleOutOfRange(f64),

    #[error("wetting angle {0} rad is outside [0, pi]")]
    WettingAngleOutOfRange(f64),

    #[error("mass ratio must be positive unless exploratory mode is enabled (got {0})")]
    NonPositiveMassRatio(f64),

    #[error("at least 2 samples are needed (got {0})")]
    TooFewSamples(usize),

    #[error("{field} range [{lo}, {hi}] must be positive, finite and increasing")]
    InvalidRange { field: &'static str, lo: f64, hi: f64 },

    #[error("profile cutoff {cutoff} must lie in (0, |psi0|) with psi0 = {inclination}")]
    InvalidCutoff { cutoff: f64, inclination: f64 },

    #[error("flat interface (wetting + contact angle = pi): the intersection function is undefined")]
    FlatInterface,

    #[error("no second critical point of the force curve for C = {capillary}, gamma = {contact_angle}")]
    NoSecondCriticalPoint { capillary: f64, contact_angle: f64 },

    #[error("asymptotic series are only available for gamma = pi/2 (got {0})")]
    UnsupportedRegime(f64),

    #[error("quadrature did not converge on [{lo}, {hi}] (error estimate {estimate:e})")]
    QuadratureNonConvergence { lo: f64, hi: f64, estimate: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
