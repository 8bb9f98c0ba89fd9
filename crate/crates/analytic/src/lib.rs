//! Closed-form results for the swept two-level system.
//!
//! Everything here is formula-level: Landau-Zener probabilities, the
//! asymptotic final-state amplitudes and their relative phase, Fisher
//! information with and without optimal control, the rotating-frame
//! best-case information, and the optimal measurement vectors. The
//! numerical counterparts live in `dynamics` and `fisher`; tests compare
//! both layers against each other.
//!
//! Inputs are dimensionless (ħ = 1). The asymptotic expressions assume
//! start and end times far outside the crossing region; `LZParams`
//! exposes that margin as a [`Validity`] report instead of enforcing it.

mod controlled;
mod measurement;
mod params;
mod sweep;

pub use controlled::{qfi_controlled, qfi_controlled_omega, rwa_max_qfi};
pub use measurement::{optimal_measurement_vectors, MeasurementScenario};
pub use params::{DriveParams, LZParams, Validity};
pub use sweep::{
    asymptotic_final_state, asymptotic_final_state_superposition, cfi_closed_form,
    lz_probabilities, qfi_delta_improved, qfi_leading, AsymptoticFinalState,
};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parameter {field} out of range: {value}")]
    ParamOutOfRange { field: &'static str, value: f64 },
    #[error("no closed form for target {target:?} in this scenario")]
    UnsupportedTarget { target: dynamics::Target },
    #[error(transparent)]
    Specfun(#[from] specfun::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
