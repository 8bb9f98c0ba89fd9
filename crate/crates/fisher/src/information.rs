//! QFI, projective CFI, and the SLD eigenbasis for pure states.

use dynamics::{HamiltonianSchedule, TwoLevelState};
use num_complex::Complex64 as C64;

use crate::{Error, Result};

/// Population threshold below which a projector is treated as dark.
const P_DARK: f64 = 1e-12;
/// Derivative magnitude above which a dark projector signals divergence.
const DP_SIGNIFICANT: f64 = 1e-9;
/// Relative eigenvalue threshold for SLD degeneracy.
const SLD_DEGENERATE: f64 = 1e-12;

/// Quantum Fisher information of a normalized pure family:
/// I_g = 4·(Re⟨∂ψ|∂ψ⟩ − |⟨ψ|∂ψ⟩|²).
///
/// Invariant under g-dependent global phases of |ψ⟩. The projection term
/// is divided by ⟨ψ|ψ⟩, a no-op for normalized input that stops solver
/// norm drift from being amplified by a large phase-velocity component.
pub fn qfi_pure(psi: &TwoLevelState, dpsi: &TwoLevelState) -> f64 {
    let dd = dpsi.norm_sq();
    let overlap = psi.inner(dpsi);
    (4.0 * (dd - overlap.norm_sqr() / psi.norm_sq())).max(0.0)
}

/// Removes the norm-drift component of a tangent. A normalized family has
/// Re⟨ψ|∂ψ⟩ = 0 exactly; any residue is upstream solver noise that would
/// otherwise leak into outcome-probability derivatives.
fn remove_norm_drift(psi: &TwoLevelState, dpsi: &TwoLevelState) -> TwoLevelState {
    let x = psi.inner(dpsi).re / psi.norm_sq();
    dpsi.sub(&psi.scaled(C64::new(x, 0.0)))
}

/// An orthonormal projective measurement {|+⟩⟨+|, |−⟩⟨−|}.
#[derive(Debug, Clone, Copy)]
pub struct MeasurementBasis {
    pub plus: TwoLevelState,
    pub minus: TwoLevelState,
}

impl MeasurementBasis {
    /// Validating constructor; rejects non-orthonormal pairs.
    pub fn from_states(plus: TwoLevelState, minus: TwoLevelState) -> Result<Self> {
        let defect = (plus.norm_sq() - 1.0)
            .abs()
            .max((minus.norm_sq() - 1.0).abs())
            .max(plus.inner(&minus).norm());
        if defect > 1e-10 {
            return Err(Error::BasisNotOrthonormal { defect });
        }
        Ok(Self { plus, minus })
    }

    /// The computational (σz) basis.
    pub fn sigma_z() -> Self {
        Self {
            plus: TwoLevelState::basis0(),
            minus: TwoLevelState::basis1(),
        }
    }

    /// Instantaneous eigenbasis of a schedule at time t: plus = excited,
    /// minus = ground. This is the asymptotically-σz readout for sweeps.
    pub fn adiabatic(schedule: &HamiltonianSchedule, t: f64) -> Self {
        let (excited, ground) = schedule.eigenbasis(t);
        Self {
            plus: excited,
            minus: ground,
        }
    }
}

/// A classical Fisher information value; `divergent` marks a dark outcome
/// (p → 0) whose probability still moves with the parameter, where the
/// genuine CFI grows without bound and the returned value (with that term
/// dropped) is only a floor.
#[derive(Debug, Clone, Copy)]
pub struct CfiValue {
    pub value: f64,
    pub divergent: bool,
}

/// CFI of the two-outcome projective measurement:
/// F = Σ_± (∂p_±)²/p_±, with ∂p = 2·Re[⟨b|ψ⟩*·⟨b|∂ψ⟩].
///
/// The basis is held fixed (evaluated at the true parameter), matching an
/// experiment that cannot re-tune its readout with g.
pub fn cfi_projective(
    psi: &TwoLevelState,
    dpsi: &TwoLevelState,
    basis: &MeasurementBasis,
) -> CfiValue {
    let dpsi = remove_norm_drift(psi, dpsi);
    let mut value = 0.0;
    let mut divergent = false;
    for b in [&basis.plus, &basis.minus] {
        let amp = b.inner(psi);
        let p = amp.norm_sqr();
        let dp = 2.0 * (amp.conj() * b.inner(&dpsi)).re;
        if p < P_DARK {
            if dp.abs() >= DP_SIGNIFICANT {
                divergent = true;
            }
            // A dark outcome with negligible sensitivity contributes 0 in
            // the limit (dp² vanishes faster than p).
            continue;
        }
        value += dp * dp / p;
    }
    CfiValue { value, divergent }
}

/// SLD eigenbasis together with a degeneracy flag.
#[derive(Debug, Clone, Copy)]
pub struct SldBasis {
    pub basis: MeasurementBasis,
    /// Set when L_g is (numerically) proportional to a rank-1 projector or
    /// zero, i.e. the measurement direction is undetermined and the state
    /// carries no first-order information.
    pub zero_information: bool,
}

/// Eigenbasis of L_g = 2(|∂ψ⟩⟨ψ| + |ψ⟩⟨∂ψ|), the optimal projective
/// measurement for the pure family. Falls back to σz when degenerate.
pub fn sld_basis(psi: &TwoLevelState, dpsi: &TwoLevelState) -> SldBasis {
    let dpsi = &remove_norm_drift(psi, dpsi);
    // L entries in the computational basis.
    let l00 = 4.0 * (dpsi.c0 * psi.c0.conj()).re;
    let l11 = 4.0 * (dpsi.c1 * psi.c1.conj()).re;
    let l01 = 2.0 * (dpsi.c0 * psi.c1.conj() + psi.c0 * dpsi.c1.conj());

    // Pauli decomposition: L = a0·1 + l⃗·σ.
    let a0 = 0.5 * (l00 + l11);
    let lz = 0.5 * (l00 - l11);
    let lx = l01.re;
    let ly = -l01.im;
    let lperp = lx.hypot(ly);
    let lnorm = lperp.hypot(lz);

    let eig_hi = (a0 + lnorm).abs();
    let eig_lo = (a0 - lnorm).abs();
    let (smax, smin) = if eig_hi >= eig_lo {
        (eig_hi, eig_lo)
    } else {
        (eig_lo, eig_hi)
    };
    let zero_information = smax == 0.0 || smin < SLD_DEGENERATE * smax || lnorm == 0.0;

    if lnorm == 0.0 {
        return SldBasis {
            basis: MeasurementBasis::sigma_z(),
            zero_information,
        };
    }

    let theta = lperp.atan2(lz);
    let phi = ly.atan2(lx);
    let (s, c) = (0.5 * theta).sin_cos();
    let phase = C64::from_polar(1.0, phi);
    let plus = TwoLevelState::new(C64::new(c, 0.0), phase * s);
    let minus = TwoLevelState::new(-phase.conj() * s, C64::new(c, 0.0));
    SldBasis {
        basis: MeasurementBasis { plus, minus },
        zero_information,
    }
}
