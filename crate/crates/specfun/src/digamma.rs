//! The digamma-line integrals: ψ(1−ia) = θ₁(a) − i·η₁(a).
//!
//! θ₁ is the real part, computed by quadrature of
//!
//! ```text
//! θ₁(a) = ∫₀^∞ [ e^(−t)/t − e^(−t) cos(at) / (1 − e^(−t)) ] dt
//! ```
//!
//! whose combined integrand is finite at t = 0 (limit −1/2). η₁ is the
//! imaginary part and has the elementary closed form
//! (πa·coth(πa) − 1)/(2a), so no quadrature is needed for it.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::quad::adaptive_gk15;
use crate::{Error, Result};

/// Absolute accuracy contract for `theta1`.
const THETA1_TOL: f64 = 1e-8;

/// Interior tolerance handed to the quadrature; the panels converge far
/// below the contract so the reported estimate keeps a wide safety margin.
const THETA1_QUAD_TOL: f64 = 1e-12;

/// Beyond this point the integrand is below 1e−19 and the tail is dropped.
const THETA1_TAIL_CUT: f64 = 45.0;

/// Below this t the direct form loses digits to cancellation; a short
/// series in t takes over.
const SERIES_SWITCH: f64 = 1e-4;

fn theta1_integrand(a: f64, t: f64) -> f64 {
    if t < SERIES_SWITCH {
        // e^(−t)·[−1/2 − (1/12 − a²/2)·t + (a²/4)·t² + O(t³)]
        let a2 = a * a;
        (-t).exp() * (-0.5 - (1.0 / 12.0 - 0.5 * a2) * t + 0.25 * a2 * t * t)
    } else {
        let e = (-t).exp();
        e / t - e * (a * t).cos() / (1.0 - e)
    }
}

/// θ₁(a) to 1e−8 absolute (in practice ~1e−12).
pub fn theta1(a: f64) -> Result<f64> {
    theta1_with_estimate(a).map(|(v, _)| v)
}

/// θ₁(a) together with the quadrature's accumulated error estimate, which
/// bounds the actual error from above.
pub fn theta1_with_estimate(a: f64) -> Result<(f64, f64)> {
    // The integrand is even in a through cos(at); |a| keeps the panel
    // layout identical for ±a so evenness holds bit-for-bit.
    let a = a.abs();
    let f = |t: f64| theta1_integrand(a, t);

    // Split at t = 1: the left piece holds the t → 0 structure, the right
    // piece the oscillation, which needs depth ~log₂(a·44) to resolve.
    let (left, e_left) = adaptive_gk15(&f, 0.0, 1.0, THETA1_QUAD_TOL, 30);
    let (right, e_right) = adaptive_gk15(&f, 1.0, THETA1_TAIL_CUT, THETA1_QUAD_TOL, 40);

    let tail_bound = 1e-19 * THETA1_TAIL_CUT; // coarse but far below target
    // Panel sums accumulate their own roundoff, which the per-panel bounds
    // do not see; the floor keeps the estimate an actual upper bound.
    let summation_floor = 5e-13 * (1.0 + left.abs() + right.abs());
    let estimate = e_left + e_right + tail_bound + summation_floor;
    if estimate > THETA1_TOL {
        return Err(Error::QuadratureNonConvergence {
            achieved: estimate,
            requested: THETA1_TOL,
        });
    }
    Ok((left + right, estimate))
}

/// η₁(a) = (πa·coth(πa) − 1)/(2a), continued through a = 0 by its limit 0.
///
/// Odd in a; elementary, so no error to report.
pub fn eta1(a: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let x = PI * a;
    if a.abs() < 0.02 {
        // x·coth x = 1 + x²/3 − x⁴/45 + 2x⁶/945 − x⁸/4725 + 2x¹⁰/93555 − …
        // Truncation at this switch is ~1e−17 relative; the direct form
        // below would lose ~3 digits to the (… − 1) cancellation.
        let x2 = x * x;
        let num = x2
            * (1.0 / 3.0
                + x2 * (-1.0 / 45.0
                    + x2 * (2.0 / 945.0 + x2 * (-1.0 / 4725.0 + x2 * (2.0 / 93555.0)))));
        return num / (2.0 * a);
    }
    (x / x.tanh() - 1.0) / (2.0 * a)
}

/// ψ(1 − ia) = θ₁(a) − i·η₁(a).
pub fn digamma_one_minus_ia(a: f64) -> Result<Complex64> {
    Ok(Complex64::new(theta1(a)?, -eta1(a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::log_gamma_complex;
    use proptest::prelude::*;

    /// Re ψ(1−ia) from a 30-digit arbitrary-precision evaluation.
    #[allow(clippy::excessive_precision)]
    const THETA1_REFERENCE: [(f64, f64); 9] = [
        (0.0, -0.57721566490153287),
        (0.5, -0.32888635722945936),
        (1.0, 0.094650320622476983),
        (1.5, 0.44469794022558723),
        (2.0, 0.71459151537397758),
        (2.5, 0.92985783874077854),
        (3.0, 1.1079807107101509),
        (3.5, 1.2596236033334676),
        (4.0, 1.3915362879216462),
    ];

    #[test]
    fn theta1_at_zero_is_minus_euler_gamma() {
        let v = theta1(0.0).unwrap();
        assert!((v - (-0.5772156649)).abs() <= 1e-8, "{v}");
        // Independent series oracle for ψ(1): −γ from the limit definition,
        // γ = lim (Σ 1/k − ln n), accelerated by the midpoint offset.
        let n = 1_000_000u64;
        let harmonic: f64 = (1..=n).map(|k| 1.0 / k as f64).sum();
        let euler = harmonic - (n as f64 + 0.5).ln();
        assert!((v + euler).abs() <= 1e-7, "{v} vs series {euler}");
    }

    #[test]
    fn theta1_matches_reference_grid() {
        for (a, want) in THETA1_REFERENCE {
            let got = theta1(a).unwrap();
            assert!((got - want).abs() <= 1e-10, "a = {a}: {got} vs {want}");
        }
        #[allow(clippy::excessive_precision)]
        let spot = [(0.01, -0.5770954695794862), (0.25, -0.5059058198695736)];
        for (a, want) in spot {
            let got = theta1(a).unwrap();
            assert!((got - want).abs() <= 1e-10, "a = {a}: {got} vs {want}");
        }
    }

    #[test]
    fn theta1_estimate_bounds_actual_error() {
        for (a, want) in THETA1_REFERENCE {
            let (got, est) = theta1_with_estimate(a).unwrap();
            let actual = (got - want).abs();
            assert!(
                est >= actual,
                "a = {a}: estimate {est:.3e} below actual {actual:.3e}"
            );
            assert!(est <= 1e-8, "a = {a}: estimate {est:.3e} above contract");
        }
    }

    #[test]
    fn theta1_is_even() {
        for a in [0.25, 1.0, 3.3] {
            assert_eq!(theta1(a).unwrap(), theta1(-a).unwrap());
        }
    }

    #[test]
    fn eta1_reference_values() {
        #[allow(clippy::excessive_precision)]
        let cases = [
            (0.25, 0.3952580252905055),
            (1.0, 1.0766740474685812),
            (4.0, 1.4457963268331033),
        ];
        for (a, want) in cases {
            let got = eta1(a);
            assert!((got - want).abs() <= 1e-13, "a = {a}: {got} vs {want}");
        }
        assert_eq!(eta1(0.0), 0.0);
    }

    #[test]
    fn eta1_series_joins_direct_form() {
        // The small-a series hands over at 0.02; both forms must agree in
        // a band around the switch (the direct form loses ~3 digits there
        // to cancellation, hence the 1e-12 gate).
        for a in [0.015, 0.019, 0.02, 0.021, 0.05] {
            let x = PI * a;
            let series = {
                let x2 = x * x;
                x2 * (1.0 / 3.0
                    + x2 * (-1.0 / 45.0
                        + x2 * (2.0 / 945.0 + x2 * (-1.0 / 4725.0 + x2 * (2.0 / 93555.0)))))
                    / (2.0 * a)
            };
            let direct = (x / x.tanh() - 1.0) / (2.0 * a);
            assert!(((series - direct) / direct).abs() <= 1e-12, "a = {a}");
        }
    }

    #[test]
    fn eta1_quadrature_form_agrees() {
        // η₁(a) = ∫₀^∞ sin(at)/(e^t − 1) dt; the integral form exists only
        // here, as an oracle for the closed form.
        for a in [0.25, 1.0, 2.5] {
            let f = |t: f64| {
                if t < 1e-6 {
                    a * (1.0 - 0.5 * t) // sin(at)/(e^t−1) → a(1 − t/2 + …)
                } else {
                    (a * t).sin() / (t.exp() - 1.0)
                }
            };
            let (quad, _) = adaptive_gk15(&f, 0.0, 45.0, 1e-12, 40);
            assert!((quad - eta1(a)).abs() <= 1e-8, "a = {a}: {quad} vs {}", eta1(a));
        }
    }

    #[test]
    fn digamma_combines_both_parts() {
        let v = digamma_one_minus_ia(1.0).unwrap();
        assert!((v.im - (-1.0766740)).abs() <= 1e-7, "{}", v.im);
        let z = digamma_one_minus_ia(0.0).unwrap();
        assert!((z.re - (-0.5772156649)).abs() <= 1e-8);
        assert_eq!(z.im, -0.0);
    }

    #[test]
    fn digamma_matches_log_gamma_derivative() {
        // Centered finite difference of ln Γ along the real direction at
        // 1 − ia: [ln Γ(1+h−ia) − ln Γ(1−h−ia)]/(2h) ≈ ψ(1−ia).
        let h = 1e-6;
        for a in [0.0, 0.25, 1.0, 3.0] {
            let zp = log_gamma_complex(Complex64::new(1.0 + h, -a)).unwrap();
            let zm = log_gamma_complex(Complex64::new(1.0 - h, -a)).unwrap();
            let fd_re = (zp.log_modulus - zm.log_modulus) / (2.0 * h);
            let fd_im = (zp.argument - zm.argument) / (2.0 * h);
            let psi = digamma_one_minus_ia(a).unwrap();
            assert!((fd_re - psi.re).abs() <= 1e-6, "a = {a}: Re {fd_re} vs {}", psi.re);
            assert!((fd_im - psi.im).abs() <= 1e-6, "a = {a}: Im {fd_im} vs {}", psi.im);
        }
    }

    proptest! {
        #[test]
        fn theta1_even_eta1_odd(a in 0.0f64..4.0) {
            prop_assert_eq!(theta1(a).unwrap(), theta1(-a).unwrap());
            prop_assert_eq!(eta1(-a), -eta1(a));
        }

        #[test]
        fn digamma_is_finite_on_contract_range(a in -4.0f64..4.0) {
            let v = digamma_one_minus_ia(a).unwrap();
            prop_assert!(v.re.is_finite() && v.im.is_finite());
        }
    }
}
