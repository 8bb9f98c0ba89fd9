//! Adaptive Dormand-Prince 5(4) for complex ODE systems, with the quartic
//! dense-output interpolant of the same pair.
//!
//! The integrator is generic over the number of complex components so the
//! plain state (2), state + derivative (4) and unitary + derivative (8)
//! problems share one code path. Step control is the classic I controller
//! with a 0.9 safety factor; the first-same-as-last stage is reused.

use crate::{C64, Error, Result};

const C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];

const A2: [f64; 1] = [0.2];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
/// Fifth-order weights (also the seventh stage row: FSAL).
const B: [f64; 6] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
];
/// Difference between the 5th- and embedded 4th-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Dense-output polynomial coefficients: contribution of stage i is
/// h·k_i·(P[i][0]·θ + P[i][1]·θ² + P[i][2]·θ³ + P[i][3]·θ⁴).
#[allow(clippy::excessive_precision)]
const P: [[f64; 4]; 7] = [
    [
        1.0,
        -8048581381.0 / 2820520608.0,
        8663915743.0 / 2820520608.0,
        -12715105075.0 / 11282082432.0,
    ],
    [0.0, 0.0, 0.0, 0.0],
    [
        0.0,
        131558114200.0 / 32700410799.0,
        -68118460800.0 / 10900136933.0,
        87487479700.0 / 32700410799.0,
    ],
    [
        0.0,
        -1754552775.0 / 470086768.0,
        14199869525.0 / 1410260304.0,
        -10690763975.0 / 1880347072.0,
    ],
    [
        0.0,
        127303824393.0 / 49829197408.0,
        -318862633887.0 / 49829197408.0,
        701980252875.0 / 199316789632.0,
    ],
    [
        0.0,
        -282668133.0 / 205662961.0,
        2019193451.0 / 616988883.0,
        -1453857185.0 / 822651844.0,
    ],
    [
        0.0,
        40617522.0 / 29380423.0,
        -110615467.0 / 29380423.0,
        69997945.0 / 29380423.0,
    ],
];

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;
const MAX_STEPS: u64 = 50_000_000;

/// One accepted step, enough to evaluate the interpolant on [t, t + h].
pub(crate) struct DenseStep<const N: usize> {
    pub t: f64,
    pub h: f64,
    pub y0: [C64; N],
    pub stages: [[C64; N]; 7],
}

impl<const N: usize> DenseStep<N> {
    /// Interpolated solution at `t_eval` ∈ [t, t + h].
    pub fn eval(&self, t_eval: f64) -> [C64; N] {
        let theta = (t_eval - self.t) / self.h;
        let mut y = self.y0;
        for (i, k) in self.stages.iter().enumerate() {
            // Horner in θ, one scalar weight per stage.
            let p = &P[i];
            let w = theta * (p[0] + theta * (p[1] + theta * (p[2] + theta * p[3])));
            let hw = self.h * w;
            for n in 0..N {
                y[n] += hw * k[n];
            }
        }
        y
    }
}

pub(crate) struct Integration<const N: usize> {
    pub y: [C64; N],
    pub steps: u64,
}

fn err_norm<const N: usize>(e: &[C64; N], y0: &[C64; N], y1: &[C64; N], atol: f64, rtol: f64) -> f64 {
    let mut acc = 0.0;
    for n in 0..N {
        let scale = atol + rtol * y0[n].norm().max(y1[n].norm());
        let r = e[n].norm() / scale;
        acc += r * r;
    }
    (acc / N as f64).sqrt()
}

/// Integrate dy/dt = f(t, y) from t0 to t1 (t1 > t0), invoking `on_step`
/// after every accepted step so callers can sample the dense output.
pub(crate) fn integrate<const N: usize, F, S>(
    f: F,
    t0: f64,
    t1: f64,
    y0: [C64; N],
    rtol: f64,
    atol: f64,
    mut on_step: S,
) -> Result<Integration<N>>
where
    F: Fn(f64, &[C64; N]) -> [C64; N],
    S: FnMut(&DenseStep<N>),
{
    let span = t1 - t0;
    debug_assert!(span > 0.0);

    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    // Crude opening step; the controller settles within a few steps and a
    // too-large guess only costs one cheap rejection.
    let mut h = (1e-4 * span).min(1.0).max(16.0 * f64::EPSILON * t0.abs().max(1.0));
    let mut steps: u64 = 0;

    while t < t1 {
        if steps >= MAX_STEPS {
            return Err(Error::StepLimit { t });
        }
        let h_min = 16.0 * f64::EPSILON * t.abs().max(1.0);
        if h < h_min {
            return Err(Error::StepSizeUnderflow { t });
        }
        let last = t + h >= t1;
        if last {
            h = t1 - t;
        }

        let mut stages = [[C64::new(0.0, 0.0); N]; 7];
        stages[0] = k1;

        let acc = |stages: &[[C64; N]; 7], coefs: &[f64]| {
            let mut dy = [C64::new(0.0, 0.0); N];
            for (k, a) in stages.iter().zip(coefs) {
                if *a != 0.0 {
                    for n in 0..N {
                        dy[n] += *a * k[n];
                    }
                }
            }
            dy
        };

        macro_rules! stage {
            ($idx:expr, $avec:expr) => {{
                let dy = acc(&stages, &$avec);
                let mut ys = y;
                for n in 0..N {
                    ys[n] += h * dy[n];
                }
                stages[$idx] = f(t + C[$idx - 1] * h, &ys);
            }};
        }
        stage!(1, A2);
        stage!(2, A3);
        stage!(3, A4);
        stage!(4, A5);
        stage!(5, A6);

        // Fifth-order solution; stage 7 is f at (t+h, y1) and doubles as
        // the next step's k1.
        let dy = acc(&stages, &B);
        let mut y1 = y;
        for n in 0..N {
            y1[n] += h * dy[n];
        }
        stages[6] = f(t + h, &y1);

        let mut err_vec = [C64::new(0.0, 0.0); N];
        for (k, e) in stages.iter().zip(E) {
            if e != 0.0 {
                for n in 0..N {
                    err_vec[n] += h * e * k[n];
                }
            }
        }
        let err = err_norm(&err_vec, &y, &y1, atol, rtol);
        steps += 1;

        if !err.is_finite() {
            h *= FAC_MIN;
            continue;
        }
        if err <= 1.0 {
            let record = DenseStep { t, h, y0: y, stages };
            on_step(&record);
            t = if last { t1 } else { t + h };
            y = y1;
            k1 = stages[6];
            let fac = if err == 0.0 {
                FAC_MAX
            } else {
                (SAFETY * err.powf(-0.2)).clamp(FAC_MIN, FAC_MAX)
            };
            h *= fac;
        } else {
            h *= (SAFETY * err.powf(-0.2)).clamp(FAC_MIN, 1.0);
        }
    }

    Ok(Integration { y, steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// dy/dt = i·y has the exact flow e^{i(t−t0)}.
    #[test]
    fn scalar_rotation_is_exact_to_tolerance() {
        let f = |_t: f64, y: &[C64; 1]| [C64::new(0.0, 1.0) * y[0]];
        let y0 = [C64::new(1.0, 0.0)];
        let out = integrate(f, 0.0, 10.0, y0, 1e-12, 1e-12, |_| {}).unwrap();
        let exact = C64::from_polar(1.0, 10.0);
        assert!((out.y[0] - exact).norm() < 1e-10, "{}", (out.y[0] - exact).norm());
    }

    #[test]
    fn dense_output_matches_exact_flow() {
        let f = |_t: f64, y: &[C64; 1]| [C64::new(0.0, 1.0) * y[0]];
        let y0 = [C64::new(1.0, 0.0)];
        let mut worst = 0.0f64;
        integrate(f, 0.0, 10.0, y0, 1e-10, 1e-10, |step| {
            for frac in [0.25, 0.5, 0.75] {
                let te = step.t + frac * step.h;
                let y = step.eval(te);
                let exact = C64::from_polar(1.0, te);
                worst = worst.max((y[0] - exact).norm());
            }
        })
        .unwrap();
        assert!(worst < 1e-9, "dense-output error {worst}");
    }

    #[test]
    fn tolerance_controls_error() {
        // Error should drop by orders of magnitude as rtol tightens.
        let f = |t: f64, y: &[C64; 1]| [C64::new(0.0, t.cos()) * y[0]];
        let exact = C64::from_polar(1.0, (5.0f64).sin());
        let run = |rtol: f64| {
            let out = integrate(f, 0.0, 5.0, [C64::new(1.0, 0.0)], rtol, rtol, |_| {}).unwrap();
            (out.y[0] - exact).norm()
        };
        let coarse = run(1e-6);
        let fine = run(1e-12);
        assert!(fine < coarse * 1e-3, "coarse {coarse:.2e}, fine {fine:.2e}");
        assert!(fine < 1e-11);
    }
}
