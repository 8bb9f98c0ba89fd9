//! Time-dependent two-level Schrödinger dynamics.
//!
//! The model is H(t) = hx(t)·σx + hy(t)·σy + hz(t)·σz plus optional
//! instantaneous pulses (exact 2×2 unitaries applied between integration
//! segments). Propagation uses an adaptive Dormand-Prince 5(4) pair with
//! dense output; a co-propagation variant carries |∂_g ψ⟩ alongside the
//! state for Fisher-information work downstream.
//!
//! Conventions:
//! - basis order is (|0⟩, |1⟩) with σz|0⟩ = +|0⟩;
//! - reported trajectories are right-continuous across pulses: a sample at
//!   a pulse time sees the post-pulse state;
//! - spans run forward in time only.

mod problem;
mod propagate;
mod rk;
mod schedule;
mod state;

pub use problem::{EstimationProblem, Target};
pub use propagate::{
    propagate, propagate_unitary_with_derivative, propagate_with_derivative, Trajectory,
    UnitaryTrajectory,
};
pub use schedule::{HamiltonianSchedule, PulseEvent};
pub use state::TwoLevelState;

pub(crate) use num_complex::Complex64 as C64;

/// Tolerance bounds accepted by the propagators.
pub const TOL_MIN: f64 = 1e-13;
pub const TOL_MAX: f64 = 1e-6;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("tolerance {tol:.3e} outside [{TOL_MIN:.0e}, {TOL_MAX:.0e}]")]
    InvalidTolerance { tol: f64 },
    #[error("span [{t0}, {t1}] is empty or not finite")]
    InvalidSpan { t0: f64, t1: f64 },
    #[error("sample time {t} outside the propagation span")]
    SampleOutsideSpan { t: f64 },
    #[error("sample times must be non-decreasing (offender: {t})")]
    SampleOrdering { t: f64 },
    #[error("pulse at t = {time} outside the propagation span")]
    PulseOutsideSpan { time: f64 },
    #[error("pulse times must be strictly increasing (offender: {time})")]
    PulseOrdering { time: f64 },
    #[error("step size underflow near t = {t} (problem too stiff for the requested tolerance)")]
    StepSizeUnderflow { t: f64 },
    #[error("step budget exhausted near t = {t}")]
    StepLimit { t: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
