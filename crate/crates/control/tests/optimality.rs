//! Propagated-QFI checks: every plan saturates the control bound, and the
//! saturation survives estimate mismatch, winding, and preparation phase.

use analytic::{DriveParams, LZParams};
use control::{plan_for_delta, plan_for_omega, plan_for_v, ControlPlan};
use dynamics::EstimationProblem;

fn qfi_at(
    plan: &ControlPlan,
    problem: &EstimationProblem,
    span: (f64, f64),
    samples: &[f64],
) -> Vec<f64> {
    let traj = dynamics::propagate_with_derivative(
        &plan.schedule,
        problem,
        plan.initial_state,
        span,
        1e-10,
        samples,
    )
    .expect("controlled run integrates");
    let derivs = traj.derivatives.as_ref().expect("derivative requested");
    traj.states
        .iter()
        .zip(derivs)
        .map(|(s, d)| fisher::qfi_pure(s, d))
        .collect()
}

fn assert_saturates(qfi: &[f64], problem: &EstimationProblem, t_start: f64, samples: &[f64]) {
    for (&q, &t) in qfi.iter().zip(samples) {
        let bound = fisher::control_bound_at(problem, t_start, t);
        assert!(
            q <= bound * (1.0 + 1e-9),
            "QFI {q} above bound {bound} at t = {t}"
        );
        assert!(
            q >= bound * (1.0 - 1e-6),
            "QFI {q} fails to saturate bound {bound} at t = {t}"
        );
    }
}

#[test]
fn gap_plan_saturates_the_bound() {
    let params = LZParams::new(1.0, 1.0, 100.0, 100.0).unwrap();
    let problem = EstimationProblem::gap(1.0);
    let samples = [-50.0, 0.0, 37.5, 100.0];
    let plan = plan_for_delta(&params, 0.0, 1.0);
    let qfi = qfi_at(&plan, &problem, (-100.0, 100.0), &samples);
    assert_saturates(&qfi, &problem, -100.0, &samples);

    // The preparation phase relabels the branches; the information stays.
    let tilted = plan_for_delta(&params, std::f64::consts::PI / 3.0, 1.0);
    let qfi_tilted = qfi_at(&tilted, &problem, (-100.0, 100.0), &samples);
    for (a, b) in qfi.iter().zip(&qfi_tilted) {
        assert!((a - b).abs() <= 1e-9 * a.max(1.0));
    }
}

#[test]
fn gap_plan_with_wrong_estimate_stays_under_the_bound() {
    let params = LZParams::new(1.0, 1.0, 100.0, 100.0).unwrap();
    let problem = EstimationProblem::gap(1.0);
    let samples = [0.0, 50.0, 100.0];
    let plan = plan_for_delta(&params, 0.0, 0.9);
    let qfi = qfi_at(&plan, &problem, (-100.0, 100.0), &samples);
    for (&q, &t) in qfi.iter().zip(&samples) {
        let bound = fisher::control_bound_at(&problem, -100.0, t);
        assert!(q <= bound * (1.0 + 1e-9));
        assert!(q > 0.0);
    }
}

#[test]
fn rate_plan_saturates_for_any_estimate_and_winding() {
    let params = LZParams::new(1.0, 1.0, 30.0, 30.0).unwrap();
    let problem = EstimationProblem::sweep_rate(1.0);
    let samples = [-12.0, 0.0, 7.5, 30.0];

    let reference = qfi_at(
        &plan_for_v(&params, 0.0, 1.0, 0),
        &problem,
        (-30.0, 30.0),
        &samples,
    );
    assert_saturates(&reference, &problem, -30.0, &samples);

    // The pulse phase depends on v_c and the global sign on the winding;
    // neither carries information about v.
    for (v_c, winding) in [(0.5, 1), (1.0, 5), (2.0, 0)] {
        let qfi = qfi_at(
            &plan_for_v(&params, 0.0, v_c, winding),
            &problem,
            (-30.0, 30.0),
            &samples,
        );
        for (a, b) in reference.iter().zip(&qfi) {
            assert!(
                (a - b).abs() <= 1e-6 * a,
                "estimate/winding changed the information: {a} vs {b}"
            );
        }
    }
}

#[test]
fn drive_plan_reaches_the_closed_form_and_the_bound() {
    let drive = DriveParams::new(0.3, 1.0, 1.0, 0.1, 5, 0.0, 1.0).unwrap();
    let t_end = drive.measurement_time();
    let problem = EstimationProblem::drive_frequency(drive.omega, drive.amp);
    let plan = plan_for_omega(&drive, 0.0, 0);
    let qfi = qfi_at(&plan, &problem, (0.0, t_end), &[t_end]);
    let formula = analytic::qfi_controlled_omega(&drive, true);
    assert!((qfi[0] - formula).abs() <= 1e-6 * formula);
    assert_saturates(&qfi, &problem, 0.0, &[t_end]);

    // Without the pulses only the first half-period's sensitivity survives
    // the sign cancellation.
    let unpulsed = ControlPlan {
        schedule: plan.schedule.clone().with_pulses(Vec::new()),
        ..plan.clone()
    };
    let qfi = qfi_at(&unpulsed, &problem, (0.0, t_end), &[t_end]);
    let formula = analytic::qfi_controlled_omega(&drive, false);
    assert!((qfi[0] - formula).abs() <= 1e-6 * formula);
}

#[test]
fn drive_plan_mismatched_clock_matches_the_segment_sum() {
    let drive = DriveParams::new(0.0, 1.0, 1.0, 0.1, 5, 0.0, 1.01).unwrap();
    let t_end = drive.measurement_time();
    let problem = EstimationProblem::drive_frequency(drive.omega, drive.amp);
    let plan = plan_for_omega(&drive, 0.0, 0);
    let qfi = qfi_at(&plan, &problem, (0.0, t_end), &[t_end]);
    let formula = analytic::qfi_controlled_omega(&drive, true);
    assert!(
        (qfi[0] - formula).abs() <= 1e-6 * formula,
        "numeric {} vs segment sum {formula}",
        qfi[0]
    );

    // β only relabels the branch phases.
    let tilted = plan_for_omega(&drive, 1.1, 0);
    let qfi_tilted = qfi_at(&tilted, &problem, (0.0, t_end), &[t_end]);
    assert!((qfi[0] - qfi_tilted[0]).abs() <= 1e-9 * qfi[0]);
}
