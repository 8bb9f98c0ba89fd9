//! Parameter bundles for the single-sweep and periodically driven setups.

use std::f64::consts::PI;

use crate::{Error, Result};

fn check(field: &'static str, value: f64, ok: bool) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::ParamOutOfRange { field, value })
    }
}

/// How far outside the crossing region the sweep starts and ends, in
/// units of the crossing duration τ. The asymptotic formulas assume both
/// margins are large; 20 is the working threshold.
#[derive(Debug, Clone, Copy)]
pub struct Validity {
    pub start_ratio: f64,
    pub end_ratio: f64,
}

impl Validity {
    /// True when both margins clear the threshold for trusting the
    /// asymptotic expressions.
    pub fn trusted(&self) -> bool {
        self.start_ratio >= 20.0 && self.end_ratio >= 20.0
    }
}

/// Single linear sweep hz = vt/2 with coupling Δ/2, run from −t0 to t_end.
#[derive(Debug, Clone, Copy)]
pub struct LZParams {
    /// Sweep rate v > 0 (energy per time).
    pub v: f64,
    /// Level splitting Δ ≥ 0 at the crossing.
    pub delta: f64,
    /// Start offset T₀ > 0 (the sweep begins at t = −T₀).
    pub t0: f64,
    /// Measurement time T > 0.
    pub t_end: f64,
}

impl LZParams {
    pub fn new(v: f64, delta: f64, t0: f64, t_end: f64) -> Result<Self> {
        check("v", v, v > 0.0)?;
        check("delta", delta, delta >= 0.0)?;
        check("t0", t0, t0 > 0.0)?;
        check("t_end", t_end, t_end > 0.0)?;
        Ok(Self { v, delta, t0, t_end })
    }

    /// Adiabaticity parameter γ = Δ²/(4v).
    pub fn gamma(&self) -> f64 {
        self.delta * self.delta / (4.0 * self.v)
    }

    /// Crossing duration τ = max(Δ/2v, 1/√v).
    pub fn tau(&self) -> f64 {
        (self.delta / (2.0 * self.v)).max(1.0 / self.v.sqrt())
    }

    /// Scaled measurement time R = √v·T.
    pub fn r(&self) -> f64 {
        self.v.sqrt() * self.t_end
    }

    /// Scaled start offset R₀ = √v·T₀.
    pub fn r0(&self) -> f64 {
        self.v.sqrt() * self.t0
    }

    /// Margins T₀/τ and T/τ for the asymptotic formulas.
    pub fn validity(&self) -> Validity {
        let tau = self.tau();
        Validity {
            start_ratio: self.t0 / tau,
            end_ratio: self.t_end / tau,
        }
    }
}

/// Periodic drive hz = (ε₀ + A·cos ωt)/2 with coupling Δ/2, measured
/// after N whole half-periods of the control clock ω_c plus a fraction α.
#[derive(Debug, Clone, Copy)]
pub struct DriveParams {
    /// Static bias ε₀.
    pub eps0: f64,
    /// Drive amplitude A > 0.
    pub amp: f64,
    /// Drive frequency ω > 0 (the estimation target).
    pub omega: f64,
    /// Level splitting Δ ≥ 0.
    pub delta: f64,
    /// Whole half-periods N ≥ 1 of the control clock.
    pub cycles: u32,
    /// Fractional final half-period α ∈ [0, 1).
    pub frac: f64,
    /// Control estimate ω_c > 0 of the frequency (sets pulse times).
    pub omega_c: f64,
}

impl DriveParams {
    pub fn new(
        eps0: f64,
        amp: f64,
        omega: f64,
        delta: f64,
        cycles: u32,
        frac: f64,
        omega_c: f64,
    ) -> Result<Self> {
        check("eps0", eps0, true)?;
        check("amp", amp, amp > 0.0)?;
        check("omega", omega, omega > 0.0)?;
        check("delta", delta, delta >= 0.0)?;
        check("cycles", cycles as f64, cycles >= 1)?;
        check("frac", frac, (0.0..1.0).contains(&frac))?;
        check("omega_c", omega_c, omega_c > 0.0)?;
        Ok(Self {
            eps0,
            amp,
            omega,
            delta,
            cycles,
            frac,
            omega_c,
        })
    }

    /// Measurement time T = (N + α)·π/ω_c.
    pub fn measurement_time(&self) -> f64 {
        (self.cycles as f64 + self.frac) * PI / self.omega_c
    }
}
