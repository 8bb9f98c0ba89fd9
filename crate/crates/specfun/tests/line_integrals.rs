//! Cross-checks of the digamma-line functions against an independent
//! recurrence/asymptotic digamma oracle and against log-gamma itself.

use num_complex::Complex64;
use specfun::{digamma_one_minus_ia, log_gamma_complex, theta1, theta1_with_estimate};

/// ψ(z) by upward recurrence into the Stirling regime. Independent of both
/// the Lanczos log-gamma and the θ₁ quadrature.
fn digamma_oracle(mut z: Complex64) -> Complex64 {
    let mut shift = Complex64::new(0.0, 0.0);
    while z.norm() < 15.0 {
        shift -= 1.0 / z;
        z += 1.0;
    }
    // ψ(z) ~ ln z − 1/(2z) − Σ B₂ₖ/(2k·z^{2k})
    let inv2 = 1.0 / (z * z);
    let mut series = Complex64::new(0.0, 0.0);
    let coefs = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
        1.0 / 12.0,
    ];
    let mut p = inv2;
    for c in coefs {
        series += c * p;
        p *= inv2;
    }
    shift + z.ln() - 0.5 / z - series
}

#[test]
fn digamma_line_matches_recurrence_oracle() {
    let mut a = 0.0;
    while a <= 4.0 {
        let got = digamma_one_minus_ia(a).unwrap();
        let want = digamma_oracle(Complex64::new(1.0, -a));
        assert!(
            (got - want).norm() <= 1e-10,
            "a = {a}: {got} vs oracle {want}"
        );
        a += 0.25;
    }
}

#[test]
fn theta1_estimate_bounds_error_against_oracle() {
    let mut a = 0.0;
    while a <= 4.0 {
        let (value, estimate) = theta1_with_estimate(a).unwrap();
        let actual = (value - digamma_oracle(Complex64::new(1.0, -a)).re).abs();
        assert!(
            estimate >= actual,
            "a = {a}: estimate {estimate:.3e} < actual {actual:.3e}"
        );
        a += 0.25;
    }
}

#[test]
fn gamma_argument_integrates_theta1() {
    // d/da arg Γ(1−ia) = −θ₁(a), so arg Γ(1−i) = −∫₀¹ θ₁(a) da. Composite
    // Simpson over the quadrature values cross-checks the two independent
    // code paths (Lanczos vs GK quadrature).
    let n = 100; // panels; Simpson error ~h⁴, far below the 1e-8 gate
    let h = 1.0 / n as f64;
    let mut integral = theta1(0.0).unwrap() + theta1(1.0).unwrap();
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        integral += w * theta1(k as f64 * h).unwrap();
    }
    integral *= h / 3.0;

    let arg = log_gamma_complex(Complex64::new(1.0, -1.0)).unwrap().argument;
    assert!(
        (arg - (-integral)).abs() <= 1e-8,
        "arg Γ(1−i) = {arg} vs −∫θ₁ = {}",
        -integral
    );
}
