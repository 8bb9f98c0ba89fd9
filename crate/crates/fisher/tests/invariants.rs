//! Cross-module invariants: frame independence, bound domination, and the
//! rotating-frame benchmark with a closed-form maximum.

use approx::assert_relative_eq;
use dynamics::{
    propagate_with_derivative, EstimationProblem, HamiltonianSchedule, Target, TwoLevelState,
};
use fisher::{
    cfi_projective, control_bound, max_qfi_over_initial_states, qfi_pure, sld_basis,
};
use num_complex::Complex64 as C64;

fn apply_fixed_unitary(m: [[C64; 2]; 2], s: &TwoLevelState) -> TwoLevelState {
    TwoLevelState::new(
        m[0][0] * s.c0 + m[0][1] * s.c1,
        m[1][0] * s.c0 + m[1][1] * s.c1,
    )
}

#[test]
fn qfi_is_frame_invariant() {
    // A parameter-independent unitary applied jointly to the state and its
    // tangent leaves the QFI unchanged.
    let psi = TwoLevelState::new(C64::new(0.52, -0.33), C64::new(0.71, 0.18)).normalized();
    let dpsi = TwoLevelState::new(C64::new(-1.3, 0.4), C64::new(0.9, 2.2));
    let base = qfi_pure(&psi, &dpsi);

    for (theta, phi, lambda) in [(0.7, 1.9, -0.4), (2.8, -0.6, 1.1), (1.2, 0.0, 3.0)] {
        // General SU(2) element in ZYZ parametrization.
        let (s, c) = (0.5f64 * theta).sin_cos();
        let u = [
            [
                C64::from_polar(c, -0.5 * (phi + lambda)),
                -C64::from_polar(s, -0.5 * (phi - lambda)),
            ],
            [
                C64::from_polar(s, 0.5 * (phi - lambda)),
                C64::from_polar(c, 0.5 * (phi + lambda)),
            ],
        ];
        let rotated = qfi_pure(
            &apply_fixed_unitary(u, &psi),
            &apply_fixed_unitary(u, &dpsi),
        );
        assert!(
            (rotated - base).abs() <= 1e-12 * base.max(1.0),
            "frame changed the QFI: {rotated} vs {base}"
        );
    }
}

#[test]
fn qfi_stays_under_control_bound_for_uncontrolled_sweep() {
    let schedule = HamiltonianSchedule::landau_zener(1.0, 1.0);
    let span = (-30.0, 30.0);
    let times: Vec<f64> = (0..=200).map(|k| -30.0 + 0.3 * k as f64).collect();
    let (excited, _) = schedule.eigenbasis(span.0);

    for target in [Target::Gap, Target::SweepRate] {
        let problem = match target {
            Target::Gap => EstimationProblem::gap(1.0),
            _ => EstimationProblem::sweep_rate(1.0),
        };
        let traj =
            propagate_with_derivative(&schedule, &problem, excited, span, 1e-11, &times).unwrap();
        let derivs = traj.derivatives.as_ref().unwrap();
        let bounds = control_bound(&problem, span, &times);
        for i in 0..times.len() {
            let qfi = qfi_pure(&traj.states[i], &derivs[i]);
            assert!(
                qfi <= bounds[i] * (1.0 + 1e-9) + 1e-12,
                "{target:?} at t = {}: QFI {qfi} above bound {}",
                times[i],
                bounds[i]
            );
        }
    }
}

#[test]
fn sld_readout_is_optimal_along_a_sweep() {
    let schedule = HamiltonianSchedule::landau_zener(1.0, 1.0);
    let problem = EstimationProblem::sweep_rate(1.0);
    let span = (-25.0, 25.0);
    let times: Vec<f64> = (1..=50).map(|k| -25.0 + k as f64).collect();
    let (excited, _) = schedule.eigenbasis(span.0);
    let traj =
        propagate_with_derivative(&schedule, &problem, excited, span, 1e-11, &times).unwrap();
    let derivs = traj.derivatives.as_ref().unwrap();
    for i in 0..times.len() {
        let qfi = qfi_pure(&traj.states[i], &derivs[i]);
        if qfi < 1e-9 {
            continue;
        }
        let sld = sld_basis(&traj.states[i], &derivs[i]);
        let cfi = cfi_projective(&traj.states[i], &derivs[i], &sld.basis);
        assert_relative_eq!(cfi.value, qfi, max_relative = 1e-8);
    }
}

#[test]
fn rotating_frame_resonance_matches_closed_form() {
    // Weak near-resonant drive in the rotating frame:
    // H = −(A/4)·[cos((ω−Δ)t)σx − sin((ω−Δ)t)σy], ∂_ω H = (At/4)·
    // [sin((ω−Δ)t)σx + cos((ω−Δ)t)σy]. At resonance and T = 2π/A the
    // best-initial-state QFI is exactly T² + 16/A².
    let a = 0.01;
    let (omega, delta) = (1.0, 1.0);
    let mismatch = omega - delta;
    let schedule = HamiltonianSchedule::new(
        move |t| -0.25 * a * (mismatch * t).cos(),
        move |t| 0.25 * a * (mismatch * t).sin(),
        |_| 0.0,
    );
    let problem = EstimationProblem::with_coefficients(
        Target::DriveFrequency,
        omega,
        move |t| 0.25 * a * t * (mismatch * t).sin(),
        move |t| 0.25 * a * t * (mismatch * t).cos(),
        |_| 0.0,
    );
    let t_end = 2.0 * std::f64::consts::PI / a;
    let got = max_qfi_over_initial_states(&schedule, &problem, (0.0, t_end), 1e-11).unwrap();
    let exact = t_end * t_end + 16.0 / (a * a);
    assert_relative_eq!(got, exact, max_relative = 1e-7);
    assert_relative_eq!(got, 554784.0, max_relative = 2e-2);
}
