//! Quantum Fisher information reachable with optimal control, in closed
//! form, for the sweep targets and the periodically driven frequency target.

use std::f64::consts::PI;

use dynamics::Target;

use crate::{DriveParams, Error, Result};

/// Best-case quantum Fisher information at time `t` of a controlled run
/// started at -t0, for the sweep targets.
///
/// The gap target gives (t + t0)²; the sweep-rate target gives the square
/// of (t² + t0²)/2 after the sign flip at the crossing and of (t² - t0²)/2
/// before it. Both saturate the generator bound of the uncontrolled
/// Hamiltonian, so they double as overlay curves for that bound.
pub fn qfi_controlled(target: Target, t: f64, t0: f64) -> Result<f64> {
    match target {
        Target::Gap => Ok((t + t0) * (t + t0)),
        Target::SweepRate => {
            let sign = if t > 0.0 { 1.0 } else { -1.0 };
            let half = 0.5 * (t * t + sign * t0 * t0);
            Ok(half * half)
        }
        Target::DriveFrequency => Err(Error::UnsupportedTarget { target }),
    }
}

/// Frequency derivative of the phase a driven qubit accumulates between the
/// a-th and b-th zero of the control clock (times aπ/ω_c and bπ/ω_c).
fn segment_dphi(amp: f64, omega: f64, omega_c: f64, a: f64, b: f64) -> f64 {
    let ka = a * PI * omega / omega_c;
    let kb = b * PI * omega / omega_c;
    let phase = amp / omega * (kb.sin() - ka.sin());
    -phase / omega + amp * PI / (omega * omega_c) * (b * kb.cos() - a * ka.cos())
}

/// Quantum Fisher information for the drive frequency of a periodically
/// driven qubit under eigenbasis-following control, with or without the
/// echo pulses at the control-clock zeros.
///
/// With pulses the per-segment phase sensitivities add with alternating
/// sign, which turns the linear-in-N growth into N²; when the clock matches
/// the true frequency and the final segment is complete this reduces to
/// (AπN²/ω²)², against (ANπ/ω²)² without pulses.
pub fn qfi_controlled_omega(params: &DriveParams, with_pulses: bool) -> f64 {
    let n = params.cycles as f64;
    if with_pulses {
        let mut s = 0.0;
        let mut sign = 1.0;
        for k in 0..params.cycles {
            s += sign * segment_dphi(params.amp, params.omega, params.omega_c, k as f64, k as f64 + 1.0);
            sign = -sign;
        }
        if params.frac > 0.0 {
            s += sign * segment_dphi(params.amp, params.omega, params.omega_c, n, n + params.frac);
        }
        s * s
    } else {
        let t = params.measurement_time();
        let wt = params.omega * t;
        let d = params.amp * (wt.sin() - wt * wt.cos()) / (params.omega * params.omega);
        d * d
    }
}

/// Best-case quantum Fisher information for the drive frequency in the
/// rotating-frame picture, valid for weak drive (A much below ω + Δ).
///
/// Grows as A²T²/W₂ with W₂ = A² + 4(Δ - ω)², plus oscillatory corrections
/// that stay bounded; exactly T² + 16/A² at resonance for T = 2π/A.
pub fn rwa_max_qfi(amp: f64, delta: f64, omega: f64, t: f64) -> f64 {
    if amp == 0.0 {
        return 0.0;
    }
    let detune = delta - omega;
    let w2 = amp * amp + 4.0 * detune * detune;
    let root = w2.sqrt();
    let half = 0.5 * t * root;
    amp * amp * t * t / w2 - 4.0 * amp * amp * t * half.sin() / (w2 * root)
        + 8.0 * amp * amp * (1.0 - half.cos()) / (w2 * w2)
}
