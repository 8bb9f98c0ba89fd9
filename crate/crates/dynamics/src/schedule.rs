//! Hamiltonian schedules: time-dependent Pauli coefficients plus an ordered
//! list of instantaneous pulses.

use std::fmt;
use std::sync::Arc;

use crate::{C64, TwoLevelState};

type Coef = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// H(t) = hx(t)·σx + hy(t)·σy + hz(t)·σz, with optional pulses.
///
/// Coefficients are the full σ prefactors; e.g. a linear sweep of rate v
/// through a gap Δ is hz = vt/2, hx = Δ/2.
#[derive(Clone)]
pub struct HamiltonianSchedule {
    hx: Coef,
    hy: Coef,
    hz: Coef,
    pulses: Vec<PulseEvent>,
}

impl fmt::Debug for HamiltonianSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HamiltonianSchedule")
            .field("pulses", &self.pulses)
            .finish_non_exhaustive()
    }
}

impl HamiltonianSchedule {
    pub fn new<Fx, Fy, Fz>(hx: Fx, hy: Fy, hz: Fz) -> Self
    where
        Fx: Fn(f64) -> f64 + Send + Sync + 'static,
        Fy: Fn(f64) -> f64 + Send + Sync + 'static,
        Fz: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            hx: Arc::new(hx),
            hy: Arc::new(hy),
            hz: Arc::new(hz),
            pulses: Vec::new(),
        }
    }

    /// Linear sweep (vt/2)σz + (Δ/2)σx.
    pub fn landau_zener(v: f64, delta: f64) -> Self {
        Self::new(move |_| 0.5 * delta, |_| 0.0, move |t| 0.5 * v * t)
    }

    /// Periodically driven level pair: [(ε₀ + A·cos ωt)/2]σz + (Δ/2)σx.
    pub fn periodic_drive(eps0: f64, amp: f64, omega: f64, delta: f64) -> Self {
        Self::new(
            move |_| 0.5 * delta,
            |_| 0.0,
            move |t| 0.5 * (eps0 + amp * (omega * t).cos()),
        )
    }

    /// Replace the pulse list (times need not be sorted here; propagation
    /// validates ordering against its span).
    pub fn with_pulses(mut self, pulses: Vec<PulseEvent>) -> Self {
        self.pulses = pulses;
        self
    }

    pub fn pulses(&self) -> &[PulseEvent] {
        &self.pulses
    }

    pub fn coefficients(&self, t: f64) -> (f64, f64, f64) {
        ((self.hx)(t), (self.hy)(t), (self.hz)(t))
    }

    /// H(t)|ψ⟩ without forming the matrix.
    pub fn apply(&self, t: f64, psi: &TwoLevelState) -> TwoLevelState {
        let (hx, hy, hz) = self.coefficients(t);
        // (hz         hx - i·hy)
        // (hx + i·hy     -hz  )
        let off = C64::new(hx, -hy);
        TwoLevelState::new(
            hz * psi.c0 + off * psi.c1,
            off.conj() * psi.c0 - hz * psi.c1,
        )
    }

    /// Instantaneous eigenpair (excited, ground) of H(t).
    ///
    /// With θ = atan2(|h⊥|, hz) and φ = atan2(hy, hx):
    /// excited = (cos θ/2, e^{iφ} sin θ/2), ground = (−e^{−iφ} sin θ/2, cos θ/2).
    /// For schedules with hx > 0, hy = 0 this choice is continuous through
    /// the crossing and tends to ±σz eigenstates at large |hz|: the excited
    /// branch runs +|1⟩ → +|0⟩ as hz goes −∞ → +∞, the ground branch
    /// −|0⟩ → +|1⟩.
    pub fn eigenbasis(&self, t: f64) -> (TwoLevelState, TwoLevelState) {
        let (hx, hy, hz) = self.coefficients(t);
        let perp = hx.hypot(hy);
        let theta = perp.atan2(hz);
        let phi = hy.atan2(hx);
        let (s, c) = (0.5 * theta).sin_cos();
        let phase = C64::from_polar(1.0, phi);
        let excited = TwoLevelState::new(C64::new(c, 0.0), phase * s);
        let ground = TwoLevelState::new(-phase.conj() * s, C64::new(c, 0.0));
        (excited, ground)
    }
}

/// An instantaneous rotation about an equatorial axis: with φ = `axis_angle`
/// and l = `winding`, U = exp(−i(l+1/2)π·(cos φ·σx + sin φ·σy)).
///
/// Pulses are idealized level-crossing unitaries: they swap the σz
/// components up to phases, and applying the same pulse twice gives −1
/// (a 2π spinor rotation), not the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseEvent {
    pub time: f64,
    pub axis_angle: f64,
    pub winding: i32,
}

impl PulseEvent {
    pub fn new(time: f64, axis_angle: f64, winding: i32) -> Self {
        Self {
            time,
            axis_angle,
            winding,
        }
    }

    /// The exact 2×2 matrix: (−1)^{l+1} i · [[0, e^{−iφ}], [e^{iφ}, 0]].
    pub fn unitary(&self) -> [[C64; 2]; 2] {
        let sign = if self.winding % 2 == 0 { -1.0 } else { 1.0 };
        let i_signed = C64::new(0.0, sign);
        let phase = C64::from_polar(1.0, self.axis_angle);
        let zero = C64::new(0.0, 0.0);
        [
            [zero, i_signed * phase.conj()],
            [i_signed * phase, zero],
        ]
    }

    /// U|ψ⟩.
    pub fn apply(&self, psi: &TwoLevelState) -> TwoLevelState {
        let u = self.unitary();
        TwoLevelState::new(
            u[0][0] * psi.c0 + u[0][1] * psi.c1,
            u[1][0] * psi.c0 + u[1][1] * psi.c1,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sweep_coefficients() {
        let s = HamiltonianSchedule::landau_zener(2.0, 0.5);
        let (hx, hy, hz) = s.coefficients(3.0);
        assert_abs_diff_eq!(hx, 0.25);
        assert_abs_diff_eq!(hy, 0.0);
        assert_abs_diff_eq!(hz, 3.0);
    }

    #[test]
    fn apply_matches_matrix_on_basis_states() {
        let s = HamiltonianSchedule::new(|_| 0.3, |_| -0.7, |_| 1.1);
        let h00 = s.apply(0.0, &TwoLevelState::basis0());
        assert_abs_diff_eq!(h00.c0.re, 1.1, epsilon = 1e-15);
        // lower-left entry hx + i·hy with hy = −0.7
        assert_abs_diff_eq!(h00.c1.re, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(h00.c1.im, -0.7, epsilon = 1e-15);
        let h11 = s.apply(0.0, &TwoLevelState::basis1());
        assert_abs_diff_eq!(h11.c0.re, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(h11.c0.im, 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(h11.c1.re, -1.1, epsilon = 1e-15);
    }

    #[test]
    fn eigenbasis_diagonalizes_h() {
        let s = HamiltonianSchedule::landau_zener(1.0, 1.0);
        for t in [-30.0, -1.0, 0.0, 0.7, 25.0] {
            let (ex, gr) = s.eigenbasis(t);
            let (hx, _, hz) = s.coefficients(t);
            let e = hx.hypot(hz);
            let hex = s.apply(t, &ex);
            let hgr = s.apply(t, &gr);
            assert!(hex.sub(&ex.scaled(C64::new(e, 0.0))).norm() < 1e-14, "t = {t}");
            assert!(hgr.sub(&gr.scaled(C64::new(-e, 0.0))).norm() < 1e-14, "t = {t}");
            assert!(ex.inner(&gr).norm() < 1e-15);
        }
    }

    #[test]
    fn eigenbasis_branch_limits() {
        let s = HamiltonianSchedule::landau_zener(1.0, 1.0);
        let (ex_early, gr_early) = s.eigenbasis(-1e6);
        assert!((ex_early.c1.re - 1.0).abs() < 1e-6); // +|1⟩
        assert!((gr_early.c0.re + 1.0).abs() < 1e-6); // −|0⟩
        let (ex_late, gr_late) = s.eigenbasis(1e6);
        assert!((ex_late.c0.re - 1.0).abs() < 1e-6); // +|0⟩
        assert!((gr_late.c1.re - 1.0).abs() < 1e-6); // +|1⟩
    }

    #[test]
    fn pulse_swaps_populations() {
        let p = PulseEvent::new(0.0, 0.9, 0);
        let up = p.apply(&TwoLevelState::basis0());
        assert!(up.c0.norm() < 1e-15);
        assert_abs_diff_eq!(up.c1.norm(), 1.0, epsilon = 1e-15);
        // |0⟩ → (−1)^{l+1} i e^{iφ} |1⟩
        let expect = C64::new(0.0, -1.0) * C64::from_polar(1.0, 0.9);
        assert!((up.c1 - expect).norm() < 1e-15);
    }

    #[test]
    fn double_pulse_is_minus_identity() {
        for (phi, l) in [(0.0, 0), (1.3, 1), (-2.1, 5)] {
            let p = PulseEvent::new(0.0, phi, l);
            let psi = TwoLevelState::new(C64::new(0.6, 0.1), C64::new(-0.3, 0.72));
            let twice = p.apply(&p.apply(&psi));
            assert!(twice.add(&psi).norm() < 1e-12, "phi={phi} l={l}");
        }
    }

    #[test]
    fn pulse_unitarity() {
        let p = PulseEvent::new(0.0, 0.37, 2);
        let u = p.unitary();
        // U†U = 1 elementwise.
        for row in 0..2 {
            for col in 0..2 {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..2 {
                    acc += u[k][row].conj() * u[k][col];
                }
                let expect = if row == col { 1.0 } else { 0.0 };
                assert!((acc - expect).norm() < 1e-15);
            }
        }
    }
}
