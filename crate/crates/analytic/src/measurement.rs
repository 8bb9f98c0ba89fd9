//! Measurement bases that saturate the quantum bound, written out
//! explicitly for each experiment this crate covers.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use dynamics::TwoLevelState;
use fisher::MeasurementBasis;
use num_complex::Complex64;

use crate::{asymptotic_final_state, DriveParams, LZParams};

/// Which experiment the measurement closes out.
///
/// Each variant carries exactly the quantities its optimal basis depends
/// on: for the controlled scenarios that includes the preparation phase β.
/// Pulse windings never appear because a pulse moves the state by a global
/// phase times a swap, and global phases reach no measurement statistic.
#[derive(Debug, Clone, Copy)]
pub enum MeasurementScenario<'a> {
    /// Uncontrolled sweep started in a single branch; optimal for both the
    /// gap and the sweep-rate target at the same time.
    Uncontrolled { params: &'a LZParams },
    /// Gap estimation with the sweep term cancelled by control.
    ControlledGap { delta: f64, t: f64, t0: f64, beta: f64 },
    /// Sweep-rate estimation with the coupling cancelled and one echo
    /// pulse at the crossing; v_c is the control's rate estimate.
    ControlledSweepRate {
        v: f64,
        t: f64,
        t0: f64,
        beta: f64,
        v_c: f64,
    },
    /// Drive-frequency estimation with echo pulses at the control-clock
    /// zeros, sampled at clock position (cycles, frac). Exact on the
    /// resonant clock ω_c = ω, where every completed half-period closes
    /// with zero accumulated drive phase.
    ControlledDrive { params: &'a DriveParams, beta: f64 },
}

/// Basis pair (|0> ± i·r|1>)/√2 for a unimodular r.
fn pm_basis(r: Complex64) -> MeasurementBasis {
    let i = Complex64::i();
    MeasurementBasis {
        plus: TwoLevelState::new(
            Complex64::new(FRAC_1_SQRT_2, 0.0),
            i * r * FRAC_1_SQRT_2,
        ),
        minus: TwoLevelState::new(
            Complex64::new(FRAC_1_SQRT_2, 0.0),
            -i * r * FRAC_1_SQRT_2,
        ),
    }
}

/// The projective measurement that extracts all of the quantum Fisher
/// information of the given scenario.
///
/// Every returned pair is exactly orthonormal, so it can be fed straight
/// to [`fisher::cfi_projective`]. The scenario fixes the equatorial angle;
/// all four experiments carry their information in a relative phase, so
/// the optimal basis always lies on the Bloch equator.
pub fn optimal_measurement_vectors(scenario: MeasurementScenario<'_>) -> MeasurementBasis {
    match scenario {
        MeasurementScenario::Uncontrolled { params } => {
            let rel = asymptotic_final_state(params).rel_phase;
            pm_basis(Complex64::from_polar(1.0, rel))
        }
        MeasurementScenario::ControlledGap { delta, t, t0, beta } => {
            let twist = Complex64::i() * Complex64::from_polar(1.0, delta * (t + t0) + beta);
            let one = Complex64::new(1.0, 0.0);
            MeasurementBasis {
                plus: TwoLevelState::new(0.5 * (one + twist), 0.5 * (one - twist)),
                minus: TwoLevelState::new(0.5 * (one - twist), 0.5 * (one + twist)),
            }
        }
        MeasurementScenario::ControlledSweepRate { v, t, t0, beta, v_c } => {
            let theta = if t < 0.0 {
                0.5 * v * (t * t - t0 * t0) + beta
            } else {
                0.5 * v * (t * t + t0 * t0) - beta - v_c * t0 * t0
            };
            pm_basis(Complex64::from_polar(1.0, theta))
        }
        MeasurementScenario::ControlledDrive { params, beta } => {
            // Each echo negates the relative phase, and on the resonant
            // clock every completed segment contributes nothing at its
            // endpoints, so only the open segment and the preparation
            // phase survive, with the parity of the pulse count.
            let parity = if params.cycles % 2 == 0 { 1.0 } else { -1.0 };
            let arg = params.amp * (params.frac * PI).sin() / params.omega + beta;
            pm_basis(Complex64::from_polar(1.0, parity * arg))
        }
    }
}
