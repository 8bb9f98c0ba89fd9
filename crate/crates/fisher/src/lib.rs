//! Fisher-information layer for pure two-level states.
//!
//! Inputs are a state |ψ⟩ and its parameter derivative |∂_g ψ⟩ (from
//! co-propagation or any other source). Provided here:
//!
//! - the quantum Fisher information of the pure family,
//! - classical Fisher information of projective two-outcome measurements,
//! - the symmetric-logarithmic-derivative eigenbasis (the optimal
//!   measurement) with a degeneracy flag,
//! - exact control-information bounds from the spectral spread of ∂_g H,
//! - the best-initial-state information via the local generator iU†∂_gU,
//! - the four-case sweep symmetry probe.

mod bound;
mod curve;
mod information;
mod max_qfi;

pub use bound::{control_bound, control_bound_at};
pub use curve::{FisherCurve, Readout};
pub use information::{cfi_projective, qfi_pure, sld_basis, CfiValue, MeasurementBasis, SldBasis};
pub use max_qfi::{max_qfi_over_initial_states, max_qfi_samples, symmetry_check, SymmetryReport};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("measurement basis not orthonormal (defect {defect:.3e})")]
    BasisNotOrthonormal { defect: f64 },
    #[error("trajectory carries no parameter derivatives")]
    MissingDerivatives,
    #[error("fisher curve invariant violated: {detail}")]
    CurveInvariant { detail: String },
    #[error("symmetry check covers the linear-sweep targets only, not {target:?}")]
    UnsupportedTarget { target: dynamics::Target },
    #[error(transparent)]
    Dynamics(#[from] dynamics::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
