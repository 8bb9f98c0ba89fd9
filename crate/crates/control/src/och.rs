//! The general eigenbasis-locking control term behind the three plans.

use std::sync::Arc;

use dynamics::{HamiltonianSchedule, TwoLevelState};

use crate::{Error, Result};

type Coef = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A traceless Hamiltonian term given by its Pauli coefficients, meant to
/// be added to a base schedule.
pub struct OchTerm {
    hx: Coef,
    hy: Coef,
    hz: Coef,
}

impl OchTerm {
    pub fn coefficients(&self, t: f64) -> (f64, f64, f64) {
        ((self.hx)(t), (self.hy)(t), (self.hz)(t))
    }

    /// The combined schedule base + term. Pulses of the base are kept.
    pub fn added_to(&self, base: &HamiltonianSchedule) -> HamiltonianSchedule {
        let (bx, by, bz) = (base.clone(), base.clone(), base.clone());
        let (tx, ty, tz) = (self.hx.clone(), self.hy.clone(), self.hz.clone());
        HamiltonianSchedule::new(
            move |t| bx.coefficients(t).0 + tx(t),
            move |t| by.coefficients(t).1 + ty(t),
            move |t| bz.coefficients(t).2 + tz(t),
        )
        .with_pulses(base.pulses().to_vec())
    }
}

/// Control term Σ_k f_k(t)|ψ_k⟩⟨ψ_k| − H_base(t) for a fixed orthonormal
/// basis {ψ₊, ψ₋}: under the combined Hamiltonian the basis states evolve
/// by pure phases ∫f_k, so a state prepared in them stays put while the
/// parameter dependence keeps accruing.
///
/// `base` is the schedule the control is meant to counteract; pass it with
/// estimates in place of any unknown true values. The trace part
/// (f₊ + f₋)/2 only adds a parameter-independent global phase and is
/// dropped, keeping the term in Pauli form.
pub fn generic_och(
    basis: (TwoLevelState, TwoLevelState),
    f_values: (
        impl Fn(f64) -> f64 + Send + Sync + 'static,
        impl Fn(f64) -> f64 + Send + Sync + 'static,
    ),
    base: &HamiltonianSchedule,
) -> Result<OchTerm> {
    let (plus, minus) = basis;
    let defect = (plus.norm_sq() - 1.0)
        .abs()
        .max((minus.norm_sq() - 1.0).abs())
        .max(plus.inner(&minus).norm());
    if defect > 1e-10 {
        return Err(Error::BasisNotOrthonormal { defect });
    }
    // Bloch axis of ψ₊; ψ₋ sits at -axis, so the projector difference is
    // (f₊ - f₋)/2 times this axis dotted into the Paulis.
    let nx = 2.0 * (plus.c0.conj() * plus.c1).re;
    let ny = 2.0 * (plus.c0.conj() * plus.c1).im;
    let nz = plus.c0.norm_sqr() - plus.c1.norm_sqr();
    let (f_plus, f_minus) = f_values;
    let half_diff = Arc::new(move |t: f64| 0.5 * (f_plus(t) - f_minus(t)));
    let (dx, dy, dz) = (half_diff.clone(), half_diff.clone(), half_diff);
    let (gx, gy, gz) = (base.clone(), base.clone(), base.clone());
    Ok(OchTerm {
        hx: Arc::new(move |t| dx(t) * nx - gx.coefficients(t).0),
        hy: Arc::new(move |t| dy(t) * ny - gy.coefficients(t).1),
        hz: Arc::new(move |t| dz(t) * nz - gz.coefficients(t).2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{plan_for_delta, plan_for_omega, plan_for_v};
    use analytic::{DriveParams, LZParams};
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn sigma_x_basis() -> (TwoLevelState, TwoLevelState) {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        (TwoLevelState::new(h, h), TwoLevelState::new(h, -h))
    }

    fn sigma_z_basis() -> (TwoLevelState, TwoLevelState) {
        (TwoLevelState::basis0(), TwoLevelState::basis1())
    }

    /// Every plan's control term is a specialization of the general form,
    /// with estimates substituted in the base being cancelled.
    #[test]
    fn specializations_reproduce_the_plan_schedules() {
        let grid: Vec<f64> = (-40..=40).map(|i| 0.37 * i as f64).collect();
        let close = |a: (f64, f64, f64), b: (f64, f64, f64)| {
            assert_relative_eq!(a.0, b.0, epsilon = 1e-14);
            assert_relative_eq!(a.1, b.1, epsilon = 1e-14);
            assert_relative_eq!(a.2, b.2, epsilon = 1e-14);
        };

        // Gap target: f = ±Δ_c/2 in the ±x basis.
        let params = LZParams::new(1.3, 0.7, 15.0, 15.0).unwrap();
        let (v_c, delta_c) = (1.1, 0.7);
        let estimated = HamiltonianSchedule::landau_zener(v_c, delta_c);
        let term = generic_och(
            sigma_x_basis(),
            (move |_| 0.5 * delta_c, move |_| -0.5 * delta_c),
            &estimated,
        )
        .unwrap();
        let combined = term.added_to(&HamiltonianSchedule::landau_zener(params.v, params.delta));
        let plan = plan_for_delta(&params, 0.0, v_c);
        for &t in &grid {
            close(combined.coefficients(t), plan.schedule.coefficients(t));
        }

        // Sweep-rate target: f = ±v_c·t/2 in the σz basis.
        let term = generic_och(
            sigma_z_basis(),
            (move |t| 0.5 * v_c * t, move |t| -0.5 * v_c * t),
            &HamiltonianSchedule::landau_zener(v_c, delta_c),
        )
        .unwrap();
        let combined = term.added_to(&HamiltonianSchedule::landau_zener(params.v, params.delta));
        let plan = plan_for_v(&params, 0.0, v_c, 0);
        for &t in &grid {
            close(combined.coefficients(t), plan.schedule.coefficients(t));
        }

        // Drive-frequency target: f = ±A cos(ω_c t)/2 in the σz basis; the
        // resulting term is static because the estimated drive cancels.
        let drive = DriveParams::new(0.3, 1.0, 1.0, 0.1, 4, 0.0, 1.01).unwrap();
        let (amp, omega_c) = (drive.amp, drive.omega_c);
        let estimated = HamiltonianSchedule::periodic_drive(drive.eps0, amp, omega_c, drive.delta);
        let term = generic_och(
            sigma_z_basis(),
            (
                move |t| 0.5 * amp * (omega_c * t).cos(),
                move |t| -0.5 * amp * (omega_c * t).cos(),
            ),
            &estimated,
        )
        .unwrap();
        for &t in &grid {
            let (hx, hy, hz) = term.coefficients(t);
            assert_relative_eq!(hx, -0.5 * drive.delta, epsilon = 1e-14);
            assert_relative_eq!(hy, 0.0, epsilon = 1e-14);
            assert_relative_eq!(hz, -0.5 * drive.eps0, epsilon = 1e-14);
        }
        let truth = HamiltonianSchedule::periodic_drive(drive.eps0, amp, drive.omega, drive.delta);
        let combined = term.added_to(&truth);
        let plan = plan_for_omega(&drive, 0.0, 0);
        for &t in &grid {
            close(combined.coefficients(t), plan.schedule.coefficients(t));
        }
    }

    #[test]
    fn zero_f_freezes_the_base() {
        let base = HamiltonianSchedule::landau_zener(2.0, 1.0);
        let term = generic_och(sigma_z_basis(), (|_| 0.0, |_| 0.0), &base).unwrap();
        let frozen = term.added_to(&base);
        for t in [-3.0, 0.0, 11.5] {
            let (hx, hy, hz) = frozen.coefficients(t);
            assert_eq!((hx, hy, hz), (0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn skewed_basis_is_rejected() {
        let base = HamiltonianSchedule::landau_zener(1.0, 1.0);
        let skew = (
            TwoLevelState::basis0(),
            TwoLevelState::new(Complex64::new(0.1, 0.0), Complex64::new(0.99, 0.0)),
        );
        assert!(matches!(
            generic_och(skew, (|_| 1.0, |_| -1.0), &base),
            Err(Error::BasisNotOrthonormal { .. })
        ));
    }
}
