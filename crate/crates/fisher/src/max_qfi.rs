//! Initial-state-independent information via the local generator.
//!
//! For a unitary family the QFI of |ψ(t)⟩ = U(t)|ψ₀⟩ is maximized over all
//! pure |ψ₀⟩ by the spectral spread of h_g = iU†(∂_g U):
//! max I_g = (λ_max − λ_min)². This is exact for 2×2 families, so no Bloch
//! sphere search is needed.

use dynamics::{
    propagate_with_derivative, propagate_unitary_with_derivative, EstimationProblem,
    HamiltonianSchedule, Target,
};
use num_complex::Complex64 as C64;

use crate::information::qfi_pure;
use crate::{Error, Result};

/// Spectral spread λ_max − λ_min of the Hermitized local generator
/// h = iU†(∂U), from the Pauli decomposition h = a₀·1 + h⃗·σ.
fn generator_spread(u: &[[C64; 2]; 2], du: &[[C64; 2]; 2]) -> f64 {
    let i = C64::new(0.0, 1.0);
    let mut h = [[C64::new(0.0, 0.0); 2]; 2];
    for (j, row) in h.iter_mut().enumerate() {
        for (k, entry) in row.iter_mut().enumerate() {
            *entry = i * (u[0][j].conj() * du[0][k] + u[1][j].conj() * du[1][k]);
        }
    }
    // U stays unitary only to solver accuracy; Hermitizing projects out the
    // spurious anti-Hermitian residue.
    let hz = 0.5 * (h[0][0].re - h[1][1].re);
    let off = 0.5 * (h[0][1] + h[1][0].conj());
    2.0 * (off.norm_sqr() + hz * hz).sqrt()
}

/// Maximum QFI over initial pure states, sampled at the given times.
pub fn max_qfi_samples(
    schedule: &HamiltonianSchedule,
    problem: &EstimationProblem,
    span: (f64, f64),
    tol: f64,
    times: &[f64],
) -> Result<Vec<f64>> {
    let traj = propagate_unitary_with_derivative(schedule, problem, span, tol, times)?;
    Ok(traj
        .unitaries
        .iter()
        .zip(&traj.derivatives)
        .map(|(u, du)| generator_spread(u, du).powi(2))
        .collect())
}

/// Maximum QFI over initial pure states at the end of the span.
pub fn max_qfi_over_initial_states(
    schedule: &HamiltonianSchedule,
    problem: &EstimationProblem,
    span: (f64, f64),
    tol: f64,
) -> Result<f64> {
    Ok(max_qfi_samples(schedule, problem, span, tol, &[span.1])?[0])
}

/// End-time QFIs of the four sweep configurations that are related by
/// time-reversal and branch exchange: (+v, upper), (+v, lower),
/// (−v, upper), (−v, lower), each prepared in the named instantaneous
/// eigenstate at −t0.
#[derive(Debug, Clone, Copy)]
pub struct SymmetryReport {
    pub values: [f64; 4],
    pub max_rel_dev: f64,
}

/// Computes the four symmetry-related QFIs for an uncontrolled linear
/// sweep and reports their maximum pairwise relative deviation.
pub fn symmetry_check(
    v: f64,
    delta: f64,
    t0: f64,
    t_end: f64,
    target: Target,
    tol: f64,
) -> Result<SymmetryReport> {
    if target == Target::DriveFrequency {
        return Err(Error::UnsupportedTarget { target });
    }
    let mut values = [0.0; 4];
    let mut idx = 0;
    for sign in [1.0, -1.0] {
        let schedule = HamiltonianSchedule::landau_zener(sign * v, delta);
        let problem = match target {
            Target::Gap => EstimationProblem::gap(delta),
            Target::SweepRate => EstimationProblem::sweep_rate(sign * v),
            Target::DriveFrequency => unreachable!(),
        };
        let (excited, ground) = schedule.eigenbasis(-t0);
        for prep in [excited, ground] {
            let traj = propagate_with_derivative(
                &schedule,
                &problem,
                prep,
                (-t0, t_end),
                tol,
                &[t_end],
            )?;
            let derivs = traj.derivatives.as_ref().expect("derivatives requested");
            values[idx] = qfi_pure(&traj.states[0], &derivs[0]);
            idx += 1;
        }
    }
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let scale = hi.abs().max(1e-300);
    Ok(SymmetryReport {
        values,
        max_rel_dev: (hi - lo) / scale,
    })
}
