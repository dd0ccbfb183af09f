//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the numerical routines and evaluators.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature exhausted its evaluation budget before reaching
    /// the requested tolerance. Carries the best estimate obtained so far.
    #[error("quadrature did not converge after {n_evals} evaluations (best estimate {value} ± {err_estimate})")]
    Convergence {
        value: f64,
        err_estimate: f64,
        n_evals: usize,
    },

    /// The operation needs an analytic derivative that the function
    /// specification cannot provide on the requested interval.
    #[error("no usable derivative for `{f}` on [{a}, {b}]")]
    MissingDerivative { f: String, a: f64, b: f64 },

    /// A function specification or configuration string failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// A sweep configuration violates its invariants.
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
