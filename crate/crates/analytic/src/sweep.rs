//! Long-time results for a single linear sweep: transition probabilities,
//! final-state amplitudes, and the closed-form information expressions.

use std::f64::consts::PI;

use dynamics::Target;
use num_complex::Complex64;

use crate::{Error, LZParams, Result};

/// Transition probabilities (p0, p1) of a sweep prepared in the bare |1>
/// state far before the crossing: p1 = exp(-2πγ) and p0 = 1 - p1.
pub fn lz_probabilities(params: &LZParams) -> (f64, f64) {
    let p1 = (-2.0 * PI * params.gamma()).exp();
    (-(-2.0 * PI * params.gamma()).exp_m1(), p1)
}

/// Accumulated sweep phase (vt² + π)/4 + (γ/2)·ln(vt²).
fn sweep_phase(v: f64, gamma: f64, t: f64) -> f64 {
    let vt2 = v * t * t;
    0.25 * (vt2 + PI) + 0.5 * gamma * vt2.ln()
}

/// Pieces shared by the branch and superposition final states.
struct SweepCore {
    gamma: f64,
    phi: f64,
    phi0: f64,
    /// Modulus of the |0> amplitude, sqrt(1 - exp(-2πγ)) up to rounding.
    m0: f64,
    /// arg Γ(1 - iγ).
    arg_gamma: f64,
}

fn sweep_core(params: &LZParams) -> SweepCore {
    let gamma = params.gamma();
    let lg = specfun::log_gamma_complex(Complex64::new(1.0, -gamma))
        .expect("1 - i*gamma is never a gamma-function pole");
    let m0 = (2.0 * PI * gamma).sqrt() * (-0.5 * PI * gamma - lg.log_modulus).exp();
    SweepCore {
        gamma,
        phi: sweep_phase(params.v, gamma, params.t_end),
        phi0: sweep_phase(params.v, gamma, params.t0),
        m0,
        arg_gamma: lg.argument,
    }
}

/// Final-state amplitudes of a sweep, long after the crossing.
///
/// Amplitudes are reported in the frame where the dynamical phase picked up
/// by the bare |1> component between -T₀ and T is factored out; for the
/// branch preparation this makes `c1` real and positive.
/// [`bare_amplitudes`](Self::bare_amplitudes) restores that phase so the
/// components can be compared against direct integration in the σz basis.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticFinalState {
    /// Amplitude on |0> in the phase-factored frame.
    pub c0: Complex64,
    /// Amplitude on |1> in the phase-factored frame.
    pub c1: Complex64,
    /// Relative phase arg(c1/c0). For the branch preparation this is the
    /// unwrapped form vT²/2 + γ·ln(vT²) + arg Γ(1 - iγ) + π/4; for
    /// superposition preparations it is wrapped to (-π, π].
    pub rel_phase: f64,
    /// Sweep phase φ at the measurement time T.
    pub phi: f64,
    /// Sweep phase φ at the start offset T₀.
    pub phi0: f64,
    /// Population of |0>.
    pub p0: f64,
    /// Population of |1>.
    pub p1: f64,
}

impl AsymptoticFinalState {
    /// Amplitudes in the bare σz frame, directly comparable with numerical
    /// integration of the sweep from t = -T₀.
    pub fn bare_amplitudes(&self) -> (Complex64, Complex64) {
        let rot = Complex64::from_polar(1.0, self.phi - self.phi0);
        (self.c0 * rot, self.c1 * rot)
    }
}

/// Long-time state of a sweep prepared in the bare |1> state at t = -T₀.
///
/// Accurate once both -T₀ and T lie far outside the crossing region; see
/// [`LZParams::validity`] for the margin of a given parameter set.
pub fn asymptotic_final_state(params: &LZParams) -> AsymptoticFinalState {
    let core = sweep_core(params);
    let c0 = Complex64::from_polar(core.m0, 0.25 * PI - 2.0 * core.phi - core.arg_gamma);
    let c1 = Complex64::new((-PI * core.gamma).exp(), 0.0);
    let vt2 = params.v * params.t_end * params.t_end;
    let rel_phase = 0.5 * vt2 + core.gamma * vt2.ln() + core.arg_gamma + 0.25 * PI;
    AsymptoticFinalState {
        c0,
        c1,
        rel_phase,
        phi: core.phi,
        phi0: core.phi0,
        p0: c0.norm_sqr(),
        p1: c1.norm_sqr(),
    }
}

/// Long-time state of a sweep prepared in the bare superposition
/// cos(α/2)|0> + e^{iβ} sin(α/2)|1> at t = -T₀.
///
/// α = π recovers [`asymptotic_final_state`] up to the global phase e^{iβ};
/// α = 0 starts in |0> and swaps the two populations.
pub fn asymptotic_final_state_superposition(
    params: &LZParams,
    alpha: f64,
    beta: f64,
) -> AsymptoticFinalState {
    let core = sweep_core(params);
    // Columns of the sweep propagator in the bare frame: |1> maps to
    // (b0, b1) and, by unitarity, |0> maps to (conj(b1), -conj(b0)).
    let b0 = Complex64::from_polar(
        core.m0,
        -core.phi - core.phi0 + 0.25 * PI - core.arg_gamma,
    );
    let b1 = Complex64::from_polar((-PI * core.gamma).exp(), core.phi - core.phi0);
    let w0 = Complex64::new((0.5 * alpha).cos(), 0.0);
    let w1 = Complex64::from_polar((0.5 * alpha).sin(), beta);
    let rot = Complex64::from_polar(1.0, core.phi0 - core.phi);
    let c0 = (b1.conj() * w0 + b0 * w1) * rot;
    let c1 = (-b0.conj() * w0 + b1 * w1) * rot;
    AsymptoticFinalState {
        c0,
        c1,
        rel_phase: (c1 * c0.conj()).arg(),
        phi: core.phi,
        phi0: core.phi0,
        p0: c0.norm_sqr(),
        p1: c1.norm_sqr(),
    }
}

/// Fisher information of a bare-basis population measurement after an
/// uncontrolled sweep, in closed form.
///
/// Depends on the target only through an overall scale; vanishes for γ = 0
/// and decays exponentially for large γ. The drive-frequency target has no
/// meaning for a single sweep.
pub fn cfi_closed_form(target: Target, params: &LZParams) -> Result<f64> {
    let g = params.gamma();
    let scale = match target {
        Target::Gap => 16.0 / (params.delta * params.delta),
        Target::SweepRate => 4.0 / (params.v * params.v),
        Target::DriveFrequency => return Err(Error::UnsupportedTarget { target }),
    };
    if g == 0.0 {
        return Ok(0.0);
    }
    Ok(scale * (PI * g).powi(2) / (2.0 * PI * g).exp_m1())
}

/// Leading large-T quantum Fisher information of an uncontrolled sweep
/// started in a single branch: (Δ²/v²)·p0·p1·ln²(vT²) for the gap and
/// p0·p1·T⁴ for the sweep rate.
pub fn qfi_leading(target: Target, params: &LZParams) -> Result<f64> {
    let (p0, p1) = lz_probabilities(params);
    match target {
        Target::Gap => {
            let l = (params.v * params.t_end * params.t_end).ln();
            Ok((params.delta / params.v).powi(2) * p0 * p1 * l * l)
        }
        Target::SweepRate => Ok(p0 * p1 * params.t_end.powi(4)),
        Target::DriveFrequency => Err(Error::UnsupportedTarget { target }),
    }
}

/// Gap-target quantum Fisher information of an uncontrolled sweep including
/// the subleading ln(vT²) and constant terms.
///
/// Extends [`qfi_leading`] with corrections built from the imaginary part
/// of the digamma function at 1 - iγ; still asymptotic in T.
pub fn qfi_delta_improved(params: &LZParams) -> Result<f64> {
    let g = params.gamma();
    if g == 0.0 {
        return Ok(0.0);
    }
    let (p0, p1) = lz_probabilities(params);
    let t1 = specfun::theta1(g)?;
    let l = (params.v * params.t_end * params.t_end).ln();
    let scale = (params.delta / params.v).powi(2);
    let leading = p0 * p1 * l * l;
    let cross = -2.0 * p1 * t1 * l;
    let constant = p1 / p0 * (PI * PI + (t1 * p0).powi(2));
    Ok(scale * (leading + cross + constant))
}
