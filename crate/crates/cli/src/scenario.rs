//! The four scenario runs and the special-function table.
//!
//! Each run propagates the state and its parameter derivative once and
//! tabulates, per sample time: the quantum Fisher information, a projective
//! classical Fisher information where a concrete measurement is defined,
//! bare populations, the control bound, and a closed-form overlay.

use std::f64::consts::{FRAC_PI_2, PI};

use analytic::{DriveParams, LZParams, MeasurementScenario};
use dynamics::{EstimationProblem, HamiltonianSchedule, Target, Trajectory, TwoLevelState};
use fisher::MeasurementBasis;

use crate::config::{RunConfig, ScenarioKind, TargetArg};
use crate::table::{Diagnostics, Table};
use crate::CliError;

/// n evenly spaced points with both endpoints exact.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![b];
    }
    let step = (b - a) / (n - 1) as f64;
    let mut v: Vec<f64> = (0..n).map(|i| a + step * i as f64).collect();
    v[0] = a;
    v[n - 1] = b;
    v
}

fn config_err(e: impl std::fmt::Display) -> CliError {
    CliError::Config(e.to_string())
}

fn dynamics_err(e: dynamics::Error) -> CliError {
    match e {
        dynamics::Error::StepSizeUnderflow { .. } | dynamics::Error::StepLimit { .. } => {
            CliError::Numerical(e.to_string())
        }
        other => CliError::Config(other.to_string()),
    }
}

fn sweep_target(cfg: &RunConfig) -> Result<Target, CliError> {
    match cfg.target {
        TargetArg::Delta => Ok(Target::Gap),
        TargetArg::V => Ok(Target::SweepRate),
        TargetArg::Omega => Err(CliError::Config(format!(
            "field target: omega needs a periodic scenario, not {}",
            cfg.scenario.name()
        ))),
    }
}

fn sweep_problem(cfg: &RunConfig) -> Result<EstimationProblem, CliError> {
    Ok(match sweep_target(cfg)? {
        Target::Gap => EstimationProblem::gap(cfg.delta),
        Target::SweepRate => EstimationProblem::sweep_rate(cfg.v),
        Target::DriveFrequency => unreachable!(),
    })
}

fn lz_params(cfg: &RunConfig) -> Result<LZParams, CliError> {
    LZParams::new(cfg.v, cfg.delta, cfg.t0, cfg.t).map_err(config_err)
}

fn drive_params(cfg: &RunConfig) -> Result<DriveParams, CliError> {
    DriveParams::new(
        cfg.eps0,
        cfg.amp,
        cfg.omega,
        cfg.delta,
        cfg.cycles,
        cfg.frac,
        cfg.omega_est,
    )
    .map_err(config_err)
}

fn diagnostics(traj: &Trajectory) -> Diagnostics {
    Diagnostics {
        max_norm_drift: traj.max_norm_drift,
        steps: traj.steps,
        rows: traj.times.len(),
    }
}

fn columns(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Uncontrolled sweep started in the bare upper level. The cfi column uses
/// the instantaneous-eigenbasis (population) measurement at each time; the
/// overlay is the leading long-time information formula, defined for t > 0.
pub fn run_single(cfg: &RunConfig, samples: &[f64]) -> Result<Table, CliError> {
    lz_params(cfg)?;
    let problem = sweep_problem(cfg)?;
    let target = sweep_target(cfg)?;
    let schedule = HamiltonianSchedule::landau_zener(cfg.v, cfg.delta);
    let traj = dynamics::propagate_with_derivative(
        &schedule,
        &problem,
        TwoLevelState::basis1(),
        (-cfg.t0, cfg.t),
        cfg.tol,
        samples,
    )
    .map_err(dynamics_err)?;
    let derivs = traj.derivatives.as_ref().expect("derivative co-propagated");

    let mut rows = Vec::with_capacity(samples.len());
    for (i, &t) in traj.times.iter().enumerate() {
        let psi = &traj.states[i];
        let dpsi = &derivs[i];
        let qfi = fisher::qfi_pure(psi, dpsi);
        let basis = MeasurementBasis::adiabatic(&schedule, t);
        let cfi = fisher::cfi_projective(psi, dpsi, &basis).value;
        let (p0, p1) = traj.populations(i);
        let bound = fisher::control_bound_at(&problem, -cfg.t0, t);
        let overlay = if t > 0.0 {
            LZParams::new(cfg.v, cfg.delta, cfg.t0, t)
                .ok()
                .map(|p| qfi_leading_checked(target, &p))
        } else {
            None
        };
        rows.push(vec![
            Some(t),
            Some(qfi),
            Some(cfi),
            Some(p0),
            Some(p1),
            Some(bound),
            overlay,
        ]);
    }
    Ok(Table {
        columns: columns(&["t", "qfi", "cfi", "p0", "p1", "bound", "analytic_overlay"]),
        rows,
        diagnostics: diagnostics(&traj),
    })
}

fn qfi_leading_checked(target: Target, params: &LZParams) -> f64 {
    analytic::qfi_leading(target, params).expect("sweep target")
}

/// Sweep with the saturating control applied. The cfi column evaluates the
/// closed-form optimal measurement vectors on the propagated state; the
/// overlay is the controlled-information closed form.
pub fn run_single_controlled(cfg: &RunConfig, samples: &[f64]) -> Result<Table, CliError> {
    let params = lz_params(cfg)?;
    let problem = sweep_problem(cfg)?;
    let target = sweep_target(cfg)?;
    let plan = match target {
        Target::Gap => control::plan_for_delta(&params, cfg.beta, cfg.v_est),
        Target::SweepRate => control::plan_for_v(&params, cfg.beta, cfg.v_est, cfg.l),
        Target::DriveFrequency => unreachable!(),
    };
    let traj = dynamics::propagate_with_derivative(
        &plan.schedule,
        &problem,
        plan.initial_state,
        (-cfg.t0, cfg.t),
        cfg.tol,
        samples,
    )
    .map_err(dynamics_err)?;
    let derivs = traj.derivatives.as_ref().expect("derivative co-propagated");

    let mut rows = Vec::with_capacity(samples.len());
    for (i, &t) in traj.times.iter().enumerate() {
        let psi = &traj.states[i];
        let dpsi = &derivs[i];
        let qfi = fisher::qfi_pure(psi, dpsi);
        let scenario = match target {
            Target::Gap => MeasurementScenario::ControlledGap {
                delta: cfg.delta,
                t,
                t0: cfg.t0,
                beta: cfg.beta,
            },
            Target::SweepRate => MeasurementScenario::ControlledSweepRate {
                v: cfg.v,
                t,
                t0: cfg.t0,
                beta: cfg.beta,
                v_c: cfg.v_est,
            },
            Target::DriveFrequency => unreachable!(),
        };
        let basis = analytic::optimal_measurement_vectors(scenario);
        let cfi = fisher::cfi_projective(psi, dpsi, &basis).value;
        let (p0, p1) = traj.populations(i);
        let bound = fisher::control_bound_at(&problem, -cfg.t0, t);
        let overlay = analytic::qfi_controlled(target, t, cfg.t0).expect("sweep target");
        rows.push(vec![
            Some(t),
            Some(qfi),
            Some(cfi),
            Some(p0),
            Some(p1),
            Some(bound),
            Some(overlay),
        ]);
    }
    Ok(Table {
        columns: columns(&["t", "qfi", "cfi", "p0", "p1", "bound", "analytic_overlay"]),
        rows,
        diagnostics: diagnostics(&traj),
    })
}

/// Uncontrolled periodic drive from the equal superposition. No concrete
/// measurement is tabulated; the overlay is the rotating-frame best case
/// over initial states, a tight reference near resonance and weak driving.
pub fn run_periodic(cfg: &RunConfig, samples: &[f64]) -> Result<Table, CliError> {
    drive_params(cfg)?;
    if cfg.target != TargetArg::Omega {
        return Err(CliError::Config(format!(
            "field target: periodic scenarios estimate omega, not {:?}",
            cfg.target
        )));
    }
    let schedule = HamiltonianSchedule::periodic_drive(cfg.eps0, cfg.amp, cfg.omega, cfg.delta);
    let problem = EstimationProblem::drive_frequency(cfg.omega, cfg.amp);
    let traj = dynamics::propagate_with_derivative(
        &schedule,
        &problem,
        TwoLevelState::bloch(FRAC_PI_2, cfg.beta),
        (0.0, cfg.t),
        cfg.tol,
        samples,
    )
    .map_err(dynamics_err)?;
    let derivs = traj.derivatives.as_ref().expect("derivative co-propagated");

    let mut rows = Vec::with_capacity(samples.len());
    for (i, &t) in traj.times.iter().enumerate() {
        let qfi = fisher::qfi_pure(&traj.states[i], &derivs[i]);
        let (p0, p1) = traj.populations(i);
        let bound = fisher::control_bound_at(&problem, 0.0, t);
        let overlay = analytic::rwa_max_qfi(cfg.amp, cfg.delta, cfg.omega, t);
        rows.push(vec![Some(t), Some(qfi), Some(p0), Some(p1), Some(bound), Some(overlay)]);
    }
    Ok(Table {
        columns: columns(&["t", "qfi", "p0", "p1", "bound", "analytic_overlay"]),
        rows,
        diagnostics: diagnostics(&traj),
    })
}

/// Control clock position of a sample time: whole half-periods and the
/// fractional remainder, snapped onto the pulse when within rounding of it
/// so samples at pulse times read out the post-pulse state.
fn clock_position(t: f64, omega_c: f64) -> (u32, f64) {
    let phase = t * omega_c / PI;
    let nearest = phase.round();
    if (phase - nearest).abs() < 1e-9 {
        (nearest as u32, 0.0)
    } else {
        (phase.floor() as u32, phase - phase.floor())
    }
}

fn drive_at(cfg: &RunConfig, t: f64) -> Option<DriveParams> {
    let (n, frac) = clock_position(t, cfg.omega_est);
    if n == 0 {
        return None;
    }
    DriveParams::new(cfg.eps0, cfg.amp, cfg.omega, cfg.delta, n, frac, cfg.omega_est).ok()
}

/// Periodic drive under the drive-frequency control plan. The span is set
/// by the control clock: (cycles + frac)·π/ω_c. cfi and overlay start at
/// the first control half-period, where the closed forms begin to apply.
pub fn run_periodic_controlled(cfg: &RunConfig, samples: &[f64]) -> Result<Table, CliError> {
    let drive = drive_params(cfg)?;
    if cfg.target != TargetArg::Omega {
        return Err(CliError::Config(format!(
            "field target: periodic scenarios estimate omega, not {:?}",
            cfg.target
        )));
    }
    let t_end = drive.measurement_time();
    let plan = control::plan_for_omega(&drive, cfg.beta, cfg.l);
    let problem = EstimationProblem::drive_frequency(cfg.omega, cfg.amp);
    let traj = dynamics::propagate_with_derivative(
        &plan.schedule,
        &problem,
        plan.initial_state,
        (0.0, t_end),
        cfg.tol,
        samples,
    )
    .map_err(dynamics_err)?;
    let derivs = traj.derivatives.as_ref().expect("derivative co-propagated");

    let mut rows = Vec::with_capacity(samples.len());
    for (i, &t) in traj.times.iter().enumerate() {
        let psi = &traj.states[i];
        let dpsi = &derivs[i];
        let qfi = fisher::qfi_pure(psi, dpsi);
        let (p0, p1) = traj.populations(i);
        let bound = fisher::control_bound_at(&problem, 0.0, t);
        let local = drive_at(cfg, t);
        let cfi = local.as_ref().map(|d| {
            let basis = analytic::optimal_measurement_vectors(MeasurementScenario::ControlledDrive {
                params: d,
                beta: cfg.beta,
            });
            fisher::cfi_projective(psi, dpsi, &basis).value
        });
        let overlay = local.as_ref().map(|d| analytic::qfi_controlled_omega(d, true));
        rows.push(vec![Some(t), Some(qfi), cfi, Some(p0), Some(p1), Some(bound), overlay]);
    }
    Ok(Table {
        columns: columns(&["t", "qfi", "cfi", "p0", "p1", "bound", "analytic_overlay"]),
        rows,
        diagnostics: diagnostics(&traj),
    })
}

/// The drive-frequency plan with its pulses stripped: the cancellation
/// Hamiltonian alone. Used by the fig3 preset's middle curve.
pub fn run_periodic_och_only(cfg: &RunConfig, samples: &[f64]) -> Result<Table, CliError> {
    let drive = drive_params(cfg)?;
    let t_end = drive.measurement_time();
    let plan = control::plan_for_omega(&drive, cfg.beta, cfg.l);
    let schedule = plan.schedule.with_pulses(Vec::new());
    let problem = EstimationProblem::drive_frequency(cfg.omega, cfg.amp);
    let traj = dynamics::propagate_with_derivative(
        &schedule,
        &problem,
        plan.initial_state,
        (0.0, t_end),
        cfg.tol,
        samples,
    )
    .map_err(dynamics_err)?;
    let derivs = traj.derivatives.as_ref().expect("derivative co-propagated");

    let mut rows = Vec::with_capacity(samples.len());
    for (i, &t) in traj.times.iter().enumerate() {
        let qfi = fisher::qfi_pure(&traj.states[i], &derivs[i]);
        let (p0, p1) = traj.populations(i);
        let bound = fisher::control_bound_at(&problem, 0.0, t);
        let overlay = drive_at(cfg, t).map(|d| analytic::qfi_controlled_omega(&d, false));
        rows.push(vec![Some(t), Some(qfi), Some(p0), Some(p1), Some(bound), overlay]);
    }
    Ok(Table {
        columns: columns(&["t", "qfi", "p0", "p1", "bound", "analytic_overlay"]),
        rows,
        diagnostics: diagnostics(&traj),
    })
}

/// Endpoint sample times for one scenario, used by run (full grid) and by
/// the sweep command (endpoint only).
pub fn sample_grid(cfg: &RunConfig) -> Result<Vec<f64>, CliError> {
    Ok(match cfg.scenario {
        ScenarioKind::Single | ScenarioKind::SingleControlled => {
            linspace(-cfg.t0, cfg.t, cfg.grid)
        }
        ScenarioKind::Periodic => linspace(0.0, cfg.t, cfg.grid),
        ScenarioKind::PeriodicControlled => {
            linspace(0.0, drive_params(cfg)?.measurement_time(), cfg.grid)
        }
    })
}

pub fn endpoint(cfg: &RunConfig) -> Result<f64, CliError> {
    Ok(match cfg.scenario {
        ScenarioKind::Single | ScenarioKind::SingleControlled | ScenarioKind::Periodic => cfg.t,
        ScenarioKind::PeriodicControlled => drive_params(cfg)?.measurement_time(),
    })
}

pub fn run_scenario(cfg: &RunConfig, samples: &[f64]) -> Result<Table, CliError> {
    match cfg.scenario {
        ScenarioKind::Single => run_single(cfg, samples),
        ScenarioKind::SingleControlled => run_single_controlled(cfg, samples),
        ScenarioKind::Periodic => run_periodic(cfg, samples),
        ScenarioKind::PeriodicControlled => run_periodic_controlled(cfg, samples),
    }
}

/// Special-function table over a grid of arguments.
pub fn run_specfun(grid: &[f64]) -> Result<Table, CliError> {
    let mut rows = Vec::with_capacity(grid.len());
    for &a in grid {
        let theta = specfun::theta1(a).map_err(|e| CliError::Numerical(e.to_string()))?;
        let eta = specfun::eta1(a);
        let lg = specfun::log_gamma_complex(num_complex::Complex64::new(1.0, -a))
            .map_err(|e| CliError::Numerical(e.to_string()))?;
        rows.push(vec![
            Some(a),
            Some(theta),
            Some(eta),
            Some(lg.log_modulus),
            Some(lg.argument),
        ]);
    }
    Ok(Table {
        columns: columns(&["a", "theta1", "eta1", "gamma_log_modulus", "gamma_argument"]),
        rows,
        diagnostics: Diagnostics::default(),
    })
}
