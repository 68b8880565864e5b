use num_complex::Complex64;
use thiserror::Error;

use crate::zero_mean::ZeroMeanReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("non-finite value {value} at z = {z}")]
    Evaluation { z: Complex64, value: Complex64 },

    #[error("evaluation point {z} lies within {distance:e} of the integration circle |z| = {radius}")]
    SingularProximity {
        z: Complex64,
        radius: f64,
        distance: f64,
    },

    #[error("ill-conditioned least-squares problem: {0}")]
    Conditioning(String),

    /// The input does not have zero means on admissible circles, so no
    /// splitting is attempted.
    #[error("function rejected: zero-mean test failed (max residual {:e}, c0 norm {:e}, tol {:e})",
        .0.max_residual(), .0.c0_norm, .0.tol)]
    Rejected(Box<ZeroMeanReport>),

    #[error("pole: {0}")]
    Pole(String),

    #[error("estimation failed: {0}")]
    Estimation(String),

    #[error("shape mismatch: {0}")]
    Shape(String),
}
