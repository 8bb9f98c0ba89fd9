//! Estimation targets and their Hamiltonian derivatives.

use std::fmt;
use std::sync::Arc;

use crate::{C64, TwoLevelState};

/// Which physical parameter is being estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// The gap Δ (σx coupling).
    Gap,
    /// The sweep rate v of a linear σz ramp.
    SweepRate,
    /// The frequency ω of a periodic σz drive.
    DriveFrequency,
}

type Coef = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A target together with its true value and ∂_g H(t), stored as Pauli
/// coefficients (∂_g H = dx·σx + dy·σy + dz·σz). The coefficients are real
/// functions of time, so ∂_g H is Hermitian by construction.
#[derive(Clone)]
pub struct EstimationProblem {
    pub target: Target,
    pub true_value: f64,
    drive_amp: Option<f64>,
    dx: Coef,
    dy: Coef,
    dz: Coef,
}

impl fmt::Debug for EstimationProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EstimationProblem")
            .field("target", &self.target)
            .field("true_value", &self.true_value)
            .finish_non_exhaustive()
    }
}

impl EstimationProblem {
    /// Estimating Δ in H ⊃ (Δ/2)σx: ∂_Δ H = σx/2.
    pub fn gap(true_delta: f64) -> Self {
        Self {
            target: Target::Gap,
            true_value: true_delta,
            drive_amp: None,
            dx: Arc::new(|_| 0.5),
            dy: Arc::new(|_| 0.0),
            dz: Arc::new(|_| 0.0),
        }
    }

    /// Estimating v in H ⊃ (vt/2)σz: ∂_v H = (t/2)σz.
    pub fn sweep_rate(true_v: f64) -> Self {
        Self {
            target: Target::SweepRate,
            true_value: true_v,
            drive_amp: None,
            dx: Arc::new(|_| 0.0),
            dy: Arc::new(|_| 0.0),
            dz: Arc::new(|t| 0.5 * t),
        }
    }

    /// Estimating ω in H ⊃ (A·cos ωt/2)σz: ∂_ω H = −(A·t·sin ωt/2)σz.
    pub fn drive_frequency(true_omega: f64, amp: f64) -> Self {
        Self {
            target: Target::DriveFrequency,
            true_value: true_omega,
            drive_amp: Some(amp),
            dx: Arc::new(|_| 0.0),
            dy: Arc::new(|_| 0.0),
            dz: Arc::new(move |t| -0.5 * amp * t * (true_omega * t).sin()),
        }
    }

    /// Drive amplitude A for the DriveFrequency target; None otherwise.
    pub fn drive_amplitude(&self) -> Option<f64> {
        self.drive_amp
    }

    /// A target with caller-supplied ∂_g H Pauli coefficients, for
    /// frame-transformed Hamiltonians outside the stock families.
    ///
    /// Closed-form control bounds key on `target` and assume the stock
    /// coefficient shapes; with bespoke coefficients use only quantities
    /// that consume the coefficients directly.
    pub fn with_coefficients(
        target: Target,
        true_value: f64,
        dx: impl Fn(f64) -> f64 + Send + Sync + 'static,
        dy: impl Fn(f64) -> f64 + Send + Sync + 'static,
        dz: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            target,
            true_value,
            drive_amp: None,
            dx: Arc::new(dx),
            dy: Arc::new(dy),
            dz: Arc::new(dz),
        }
    }

    /// ∂_g H coefficients (dx, dy, dz) at time t.
    pub fn dgh_coefficients(&self, t: f64) -> (f64, f64, f64) {
        ((self.dx)(t), (self.dy)(t), (self.dz)(t))
    }

    /// (∂_g H)|ψ⟩.
    pub fn apply_dgh(&self, t: f64, psi: &TwoLevelState) -> TwoLevelState {
        let (dx, dy, dz) = self.dgh_coefficients(t);
        let off = C64::new(dx, -dy);
        TwoLevelState::new(
            dz * psi.c0 + off * psi.c1,
            off.conj() * psi.c0 - dz * psi.c1,
        )
    }

    /// Spectral spread (μ_max − μ_min) of ∂_g H at time t; the growth rate
    /// of the optimal-control information bound.
    pub fn generator_eigen_spread(&self, t: f64) -> f64 {
        let (dx, dy, dz) = self.dgh_coefficients(t);
        2.0 * (dx * dx + dy * dy + dz * dz).sqrt()
    }
}
