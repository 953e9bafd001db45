use thiserror::Error;

/// Errors produced by the numerical kernels.
///
/// Every operation rejects non-finite input with `Domain` instead of letting
/// NaN propagate through a computation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite value encountered at {point:?}")]
    NonFinite { point: Vec<f64> },

    #[error("Newton iteration did not converge after {iterations} steps (|residual| = {residual:.3e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        last_iterate: Vec<f64>,
    },

    #[error("matrix is numerically singular (condition estimate {cond:.3e})")]
    Singular { cond: f64 },

    #[error("point outside the supported region: {0}")]
    OutOfRegion(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Guard helper: all coordinates must be finite.
pub fn ensure_finite(x: &[f64]) -> Result<()> {
    if x.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite { point: x.to_vec() })
    }
}
