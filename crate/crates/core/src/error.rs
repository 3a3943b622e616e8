use thiserror::Error;

/// Errors shared across the solver modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole at t = 1: family-a generating function f diverges there")]
    Pole,

    #[error("quadrature did not converge: {context} (best estimate {estimate}, error {error})")]
    Quadrature {
        context: String,
        estimate: f64,
        error: f64,
    },

    #[error("bisection bracket could not be established: {0}")]
    Bracket(String),

    #[error("tolerance not met: {0}")]
    ToleranceNotMet(String),

    #[error("solver did not converge: {0}")]
    NonConvergence(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("profile has no damage well (min v = {min_v}, need < 0.9)")]
    NoWellFound { min_v: f64 },

    #[error("law table does not cover the requested range: {0}")]
    TableRange(String),

    #[error("the requested profile has g = 1 (full crack); no (alpha, beta) pair with finite alpha' exists")]
    FullCrackProfile,
}

pub type Result<T> = std::result::Result<T, Error>;
