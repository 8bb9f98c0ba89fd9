//! Builders that turn an estimation target into its optimal control setup:
//! the added Hamiltonian term that locks the state to the extremal
//! eigenstates of ∂_gH, echo pulses where those eigenstates cross, and the
//! prescribed initial state.
//!
//! Controls never touch the true parameter. Where the ideal control would
//! need it, the builders accept an estimate (v_c, ω_c) instead; the plans
//! stay optimal for any estimate, which is what makes them usable.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use analytic::{DriveParams, LZParams};
use dynamics::{HamiltonianSchedule, PulseEvent, TwoLevelState};
use num_complex::Complex64;

mod och;

pub use och::{generic_och, OchTerm};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("basis is not orthonormal (defect {defect:.3e})")]
    BasisNotOrthonormal { defect: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Parameter guesses the control hardware substitutes for unknown true
/// values. `None` means the corresponding plan does not use that estimate.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ControlEstimates {
    pub v_c: Option<f64>,
    pub omega_c: Option<f64>,
    pub delta_c: Option<f64>,
}

/// A ready-to-propagate controlled experiment: the combined schedule
/// (system plus control, including any pulses), the initial state the
/// protocol prescribes, and the knobs that produced it.
#[derive(Debug, Clone)]
pub struct ControlPlan {
    pub schedule: HamiltonianSchedule,
    pub initial_state: TwoLevelState,
    /// Initial relative phase between the two prepared branches.
    pub beta: f64,
    pub estimates: ControlEstimates,
    /// Winding of every pulse in the schedule.
    pub winding: i32,
}

/// Gap estimation: the control cancels the sweep term using the rate
/// estimate `v_c`, leaving (Δ/2)σx plus a residual ((v - v_c)t/2)σz that
/// vanishes identically when the estimate is exact. No pulses are needed
/// because the ±x eigenstates of ∂_ΔH never cross.
///
/// The prepared state is (|+x⟩ + e^{iβ}|-x⟩)/√2.
pub fn plan_for_delta(params: &LZParams, beta: f64, v_c: f64) -> ControlPlan {
    let residual = params.v - v_c;
    let delta = params.delta;
    let schedule = HamiltonianSchedule::new(
        move |_| 0.5 * delta,
        |_| 0.0,
        move |t| 0.5 * residual * t,
    );
    let e = Complex64::from_polar(1.0, beta);
    let one = Complex64::new(1.0, 0.0);
    ControlPlan {
        schedule,
        initial_state: TwoLevelState::new(0.5 * (one + e), 0.5 * (one - e)),
        beta,
        estimates: ControlEstimates {
            v_c: Some(v_c),
            delta_c: Some(params.delta),
            ..Default::default()
        },
        winding: 0,
    }
}

/// Sweep-rate estimation: the control cancels the coupling, leaving the
/// bare sweep (vt/2)σz, and fires one echo pulse at the crossing. The
/// pulse's equatorial axis absorbs the phase v_c·T₀²/2 the control frame
/// has accumulated by t = 0; the estimate only shifts phases, never the
/// extracted information.
///
/// The prepared state is (|0⟩ + e^{iβ}|1⟩)/√2.
pub fn plan_for_v(params: &LZParams, beta: f64, v_c: f64, winding: i32) -> ControlPlan {
    let v = params.v;
    let pulse = PulseEvent::new(0.0, -0.5 * v_c * params.t0 * params.t0, winding);
    let schedule = HamiltonianSchedule::new(|_| 0.0, |_| 0.0, move |t| 0.5 * v * t)
        .with_pulses(vec![pulse]);
    ControlPlan {
        schedule,
        initial_state: equatorial_state(beta),
        beta,
        estimates: ControlEstimates {
            v_c: Some(v_c),
            delta_c: Some(params.delta),
            ..Default::default()
        },
        winding,
    }
}

/// Drive-frequency estimation: a static control cancels the bias and the
/// coupling, leaving (A cos ωt/2)σz, with echo pulses at every zero of the
/// control clock, t = nπ/ω_c for n = 1..N. All pulse axes sit at angle 0;
/// the clock estimate ω_c sets the pulse times and nothing else.
///
/// The prepared state is (|0⟩ + e^{iβ}|1⟩)/√2.
pub fn plan_for_omega(drive: &DriveParams, beta: f64, winding: i32) -> ControlPlan {
    let (amp, omega) = (drive.amp, drive.omega);
    let pulses = (1..=drive.cycles)
        .map(|n| PulseEvent::new(n as f64 * PI / drive.omega_c, 0.0, winding))
        .collect();
    let schedule =
        HamiltonianSchedule::new(|_| 0.0, |_| 0.0, move |t| 0.5 * amp * (omega * t).cos())
            .with_pulses(pulses);
    ControlPlan {
        schedule,
        initial_state: equatorial_state(beta),
        beta,
        estimates: ControlEstimates {
            omega_c: Some(drive.omega_c),
            delta_c: Some(drive.delta),
            ..Default::default()
        },
        winding,
    }
}

fn equatorial_state(beta: f64) -> TwoLevelState {
    TwoLevelState::new(
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::from_polar(FRAC_1_SQRT_2, beta),
    )
}
