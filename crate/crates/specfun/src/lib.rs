//! Special functions for the two-level sweep formulas: complex log-gamma,
//! the digamma-line integrals theta1/eta1, and the adaptive quadrature that
//! backs them.
//!
//! Everything here is plain `f64`; accuracy targets are stated per function.
//! All operations are pure and safe to call from any thread.

mod digamma;
mod gamma;
mod quad;

pub use digamma::{digamma_one_minus_ia, eta1, theta1, theta1_with_estimate};
pub use gamma::{log_gamma_complex, LogGammaValue};
pub use quad::adaptive_gk15;

/// Errors reported by the special-function layer.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Gamma has poles at 0, -1, -2, ...; log-gamma is undefined there.
    #[error("log-gamma pole at non-positive integer z = {re}")]
    Pole { re: f64 },
    /// The adaptive quadrature could not push its error estimate below the
    /// requested tolerance; the achieved estimate is reported.
    #[error("quadrature did not converge: error estimate {achieved:.3e} exceeds {requested:.3e}")]
    QuadratureNonConvergence { achieved: f64, requested: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
