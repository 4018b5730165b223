//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or profile failed one of its invariants.
    #[error("validation: {0}")]
    Validation(String),

    /// The profile file could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The drift matrix has an eigenvalue with non-negative real part, so
    /// stationary spectra and covariances do not exist.
    #[error("model is not strictly stable (spectral abscissa {abscissa:.6e} rad/s)")]
    Unstable { abscissa: f64 },

    /// Frequency-domain inversion failed (marginal or unstable model).
    #[error("susceptibility matrix is singular at omega = {omega:.6e} rad/s")]
    Singular { omega: f64 },

    /// A solver produced a result outside its guaranteed residual bound.
    #[error("residual {residual:.3e} exceeds bound {bound:.3e}")]
    ResidualExceeded { residual: f64, bound: f64 },

    /// The mechanical response vanishes at the requested frequency/angle, so
    /// added noise is undefined there.
    #[error("mechanical response is zero at omega = {omega:.6e} rad/s; added noise undefined")]
    BlindSensor { omega: f64 },

    /// A scan or sweep had nothing to evaluate.
    #[error("empty scan: {0}")]
    EmptyScan(String),

    /// Optimization could not find any stable point inside the given bounds.
    #[error("no stable point inside optimization bounds")]
    NoStablePoint,

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Parse { .. } => 2,
            Error::Unstable { .. } | Error::Singular { .. } | Error::NoStablePoint => 3,
            Error::Io(_) => 4,
            _ => 1,
        }
    }
}
