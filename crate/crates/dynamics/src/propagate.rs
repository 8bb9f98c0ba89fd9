//! Segmented propagation: integrate between pulses, apply each pulse as an
//! exact unitary, and sample requested times from the dense output.

use crate::rk::{integrate, DenseStep};
use crate::{
    C64, Error, EstimationProblem, HamiltonianSchedule, PulseEvent, Result, TwoLevelState,
    TOL_MAX, TOL_MIN,
};

/// Sampled solution of one propagation.
///
/// `states[i]` is ψ(times[i]); with co-propagation, `derivatives[i]` is the
/// (unnormalized) |∂_g ψ(times[i])⟩ for the problem's target, with the
/// initial condition |∂_g ψ(t_start)⟩ = 0 (parameter-independent
/// preparation). Samples at pulse times are post-pulse.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<TwoLevelState>,
    pub derivatives: Option<Vec<TwoLevelState>>,
    /// max over accepted steps of | ‖ψ(t)‖ − ‖ψ(t_start)‖ |
    pub max_norm_drift: f64,
    /// accepted + rejected integrator steps, all segments
    pub steps: u64,
}

impl Trajectory {
    /// Populations (|c0|², |c1|²) at sample i.
    pub fn populations(&self, i: usize) -> (f64, f64) {
        (self.states[i].c0.norm_sqr(), self.states[i].c1.norm_sqr())
    }

    pub fn final_state(&self) -> &TwoLevelState {
        self.states.last().expect("trajectory has samples")
    }
}

/// The integrator runs three decades below the user tolerance so that the
/// accumulated error over long spans still respects it; the floor keeps the
/// controller out of the roundoff-dominated regime.
fn internal_tolerance(tol: f64) -> f64 {
    (tol * 1e-3).max(5e-14)
}

fn validate(
    span: (f64, f64),
    tol: f64,
    sample_times: &[f64],
    pulses: &[PulseEvent],
) -> Result<()> {
    let (t0, t1) = span;
    if !(tol >= TOL_MIN && tol <= TOL_MAX) {
        return Err(Error::InvalidTolerance { tol });
    }
    if !(t0.is_finite() && t1.is_finite() && t1 > t0) {
        return Err(Error::InvalidSpan { t0, t1 });
    }
    let mut prev = f64::NEG_INFINITY;
    for &t in sample_times {
        if !(t >= t0 && t <= t1) {
            return Err(Error::SampleOutsideSpan { t });
        }
        if t < prev {
            return Err(Error::SampleOrdering { t });
        }
        prev = t;
    }
    let mut prev_pulse = f64::NEG_INFINITY;
    for p in pulses {
        if !(p.time >= t0 && p.time <= t1) {
            return Err(Error::PulseOutsideSpan { time: p.time });
        }
        if p.time <= prev_pulse {
            return Err(Error::PulseOrdering { time: p.time });
        }
        prev_pulse = p.time;
    }
    Ok(())
}

/// Plain Schrödinger propagation: iċ = H(t)c.
pub fn propagate(
    schedule: &HamiltonianSchedule,
    psi0: TwoLevelState,
    span: (f64, f64),
    tol: f64,
    sample_times: &[f64],
) -> Result<Trajectory> {
    validate(span, tol, sample_times, schedule.pulses())?;
    let rhs = |t: f64, y: &[C64; 2]| {
        let h = schedule.apply(t, &TwoLevelState::new(y[0], y[1]));
        let mi = C64::new(0.0, -1.0);
        [mi * h.c0, mi * h.c1]
    };
    let apply_pulse = |p: &PulseEvent, y: &mut [C64; 2]| {
        let out = p.apply(&TwoLevelState::new(y[0], y[1]));
        *y = [out.c0, out.c1];
    };
    let run = run_segments(
        rhs,
        apply_pulse,
        schedule.pulses(),
        [psi0.c0, psi0.c1],
        span,
        internal_tolerance(tol),
        sample_times,
    )?;
    Ok(Trajectory {
        times: sample_times.to_vec(),
        states: run
            .samples
            .into_iter()
            .map(|y| TwoLevelState::new(y[0], y[1]))
            .collect(),
        derivatives: None,
        max_norm_drift: run.max_norm_drift,
        steps: run.steps,
    })
}

/// Co-propagation of the state and its parameter derivative:
/// iċ = H c, i·(∂_g c)̇ = H(∂_g c) + (∂_g H)c, with ∂_g c(t_start) = 0.
pub fn propagate_with_derivative(
    schedule: &HamiltonianSchedule,
    problem: &EstimationProblem,
    psi0: TwoLevelState,
    span: (f64, f64),
    tol: f64,
    sample_times: &[f64],
) -> Result<Trajectory> {
    validate(span, tol, sample_times, schedule.pulses())?;
    let rhs = |t: f64, y: &[C64; 4]| {
        let c = TwoLevelState::new(y[0], y[1]);
        let d = TwoLevelState::new(y[2], y[3]);
        let hc = schedule.apply(t, &c);
        let hd = schedule.apply(t, &d);
        let sc = problem.apply_dgh(t, &c);
        let mi = C64::new(0.0, -1.0);
        [
            mi * hc.c0,
            mi * hc.c1,
            mi * (hd.c0 + sc.c0),
            mi * (hd.c1 + sc.c1),
        ]
    };
    // Pulses carry no dependence on the estimated parameter, so the
    // derivative components transform with the same bare unitary.
    let apply_pulse = |p: &PulseEvent, y: &mut [C64; 4]| {
        let c = p.apply(&TwoLevelState::new(y[0], y[1]));
        let d = p.apply(&TwoLevelState::new(y[2], y[3]));
        *y = [c.c0, c.c1, d.c0, d.c1];
    };
    let run = run_segments(
        rhs,
        apply_pulse,
        schedule.pulses(),
        [psi0.c0, psi0.c1, C64::new(0.0, 0.0), C64::new(0.0, 0.0)],
        span,
        internal_tolerance(tol),
        sample_times,
    )?;
    let mut states = Vec::with_capacity(run.samples.len());
    let mut derivs = Vec::with_capacity(run.samples.len());
    for y in run.samples {
        states.push(TwoLevelState::new(y[0], y[1]));
        derivs.push(TwoLevelState::new(y[2], y[3]));
    }
    Ok(Trajectory {
        times: sample_times.to_vec(),
        states,
        derivatives: Some(derivs),
        max_norm_drift: run.max_norm_drift,
        steps: run.steps,
    })
}

/// Sampled evolution operator and its parameter derivative.
///
/// `unitaries[i]` is U(times[i], t_start); `derivatives[i]` is ∂_g U at the
/// same instant (zero at t_start). Pulses multiply both from the left.
#[derive(Debug, Clone)]
pub struct UnitaryTrajectory {
    pub times: Vec<f64>,
    pub unitaries: Vec<[[C64; 2]; 2]>,
    pub derivatives: Vec<[[C64; 2]; 2]>,
    pub steps: u64,
}

/// Co-propagation of the full evolution operator U and ∂_g U:
/// iU̇ = H U, i·(∂_g U)̇ = H(∂_g U) + (∂_g H)U, with U(t_start) = 1 and
/// ∂_g U(t_start) = 0. Used for initial-state-independent information
/// quantities via the local generator iU†∂_gU.
pub fn propagate_unitary_with_derivative(
    schedule: &HamiltonianSchedule,
    problem: &EstimationProblem,
    span: (f64, f64),
    tol: f64,
    sample_times: &[f64],
) -> Result<UnitaryTrajectory> {
    validate(span, tol, sample_times, schedule.pulses())?;
    // Layout: columns of U then columns of ∂_g U, each column a state.
    let rhs = |t: f64, y: &[C64; 8]| {
        let mut out = [C64::new(0.0, 0.0); 8];
        let mi = C64::new(0.0, -1.0);
        for col in 0..2 {
            let u = TwoLevelState::new(y[2 * col], y[2 * col + 1]);
            let v = TwoLevelState::new(y[4 + 2 * col], y[4 + 2 * col + 1]);
            let hu = schedule.apply(t, &u);
            let hv = schedule.apply(t, &v);
            let su = problem.apply_dgh(t, &u);
            out[2 * col] = mi * hu.c0;
            out[2 * col + 1] = mi * hu.c1;
            out[4 + 2 * col] = mi * (hv.c0 + su.c0);
            out[4 + 2 * col + 1] = mi * (hv.c1 + su.c1);
        }
        out
    };
    let apply_pulse = |p: &PulseEvent, y: &mut [C64; 8]| {
        for col in 0..4 {
            let s = p.apply(&TwoLevelState::new(y[2 * col], y[2 * col + 1]));
            y[2 * col] = s.c0;
            y[2 * col + 1] = s.c1;
        }
    };
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let y0 = [one, zero, zero, one, zero, zero, zero, zero];
    let run = run_segments(
        rhs,
        apply_pulse,
        schedule.pulses(),
        y0,
        span,
        internal_tolerance(tol),
        sample_times,
    )?;
    let unpack = |y: &[C64; 8], off: usize| [[y[off], y[off + 2]], [y[off + 1], y[off + 3]]];
    Ok(UnitaryTrajectory {
        times: sample_times.to_vec(),
        unitaries: run.samples.iter().map(|y| unpack(y, 0)).collect(),
        derivatives: run.samples.iter().map(|y| unpack(y, 4)).collect(),
        steps: run.steps,
    })
}

struct SegmentedRun<const N: usize> {
    samples: Vec<[C64; N]>,
    #[allow(dead_code)]
    y_end: [C64; N],
    max_norm_drift: f64,
    steps: u64,
}

/// Norm of the leading two components (the physical state; co-propagated
/// derivative components are not norm-preserving).
fn state_norm<const N: usize>(y: &[C64; N]) -> f64 {
    (y[0].norm_sqr() + y[1].norm_sqr()).sqrt()
}

fn run_segments<const N: usize, F, P>(
    rhs: F,
    apply_pulse: P,
    pulses: &[PulseEvent],
    y0: [C64; N],
    span: (f64, f64),
    tol_internal: f64,
    sample_times: &[f64],
) -> Result<SegmentedRun<N>>
where
    F: Fn(f64, &[C64; N]) -> [C64; N],
    P: Fn(&PulseEvent, &mut [C64; N]),
{
    let (t0, t1) = span;
    let mut y = y0;
    let mut t = t0;
    let norm0 = state_norm(&y);
    let mut drift = 0.0f64;
    let mut steps = 0u64;
    let mut samples = vec![[C64::new(0.0, 0.0); N]; sample_times.len()];
    let mut si = 0usize;

    // Pulse boundaries split the span; each boundary applies its unitary to
    // the running solution, so samples at the boundary read post-pulse.
    let mut boundaries: Vec<Option<&PulseEvent>> =
        pulses.iter().map(Some).collect();
    boundaries.push(None); // final segment up to t1

    for (k, boundary) in boundaries.iter().enumerate() {
        let seg_end = boundary.map_or(t1, |p| p.time);
        if seg_end > t {
            // Samples strictly inside [t, seg_end) come from dense output;
            // a sample exactly at t is θ = 0 of the first step.
            let out = integrate(&rhs, t, seg_end, y, tol_internal, tol_internal, |step: &DenseStep<N>| {
                while si < sample_times.len() && sample_times[si] < step.t + step.h && sample_times[si] >= step.t {
                    // Samples meeting seg_end exactly wait for the next
                    // segment (post-pulse reporting).
                    if sample_times[si] >= seg_end {
                        break;
                    }
                    samples[si] = step.eval(sample_times[si]);
                    si += 1;
                }
                let n = state_norm(&step.y0);
                drift = drift.max((n - norm0).abs());
            })?;
            y = out.y;
            steps += out.steps;
            t = seg_end;
            drift = drift.max((state_norm(&y) - norm0).abs());
        }
        if let Some(p) = boundary {
            apply_pulse(p, &mut y);
        }
        let _ = k;
    }

    // Anything left is pinned at the end of the span (within roundoff).
    while si < sample_times.len() {
        samples[si] = y;
        si += 1;
    }

    Ok(SegmentedRun {
        samples,
        y_end: y,
        max_norm_drift: drift,
        steps,
    })
}
