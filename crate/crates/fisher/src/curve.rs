//! Sampled information curves assembled from a propagated trajectory.

use dynamics::{EstimationProblem, HamiltonianSchedule, Trajectory};

use crate::bound::control_bound_at;
use crate::information::{cfi_projective, qfi_pure, sld_basis, MeasurementBasis};
use crate::{Error, Result};

/// How outcome probabilities (and the CFI) are read out along the curve.
pub enum Readout<'a> {
    /// No classical readout: probabilities in the computational basis,
    /// no CFI column.
    None,
    /// One fixed basis for every sample.
    Fixed(MeasurementBasis),
    /// Instantaneous eigenbasis of a schedule (asymptotically σz for
    /// linear sweeps).
    Adiabatic(&'a HamiltonianSchedule),
    /// The optimal (SLD) basis recomputed at each sample.
    Sld,
}

/// Information quantities sampled on a time grid. `cfi` and `bound` are
/// present only when a readout or a control problem was supplied.
#[derive(Debug, Clone)]
pub struct FisherCurve {
    pub times: Vec<f64>,
    pub qfi: Vec<f64>,
    pub cfi: Option<Vec<f64>>,
    pub p0: Vec<f64>,
    pub p1: Vec<f64>,
    pub bound: Option<Vec<f64>>,
    /// Set when any CFI sample had a dark outcome whose probability still
    /// moves with the parameter (the dropped term diverges).
    pub divergent_cfi: bool,
}

impl FisherCurve {
    /// Builds the curve from a trajectory that carries parameter
    /// derivatives. `p0`/`p1` are the outcome probabilities of the chosen
    /// readout (computational-basis populations for `Readout::None`).
    pub fn from_trajectory(traj: &Trajectory, readout: Readout<'_>) -> Result<Self> {
        let derivs = traj.derivatives.as_ref().ok_or(Error::MissingDerivatives)?;
        let n = traj.times.len();
        let mut qfi = Vec::with_capacity(n);
        let mut cfi = Vec::with_capacity(n);
        let mut p0 = Vec::with_capacity(n);
        let mut p1 = Vec::with_capacity(n);
        let mut divergent = false;

        for i in 0..n {
            let psi = &traj.states[i];
            let d = &derivs[i];
            qfi.push(qfi_pure(psi, d));
            let basis = match &readout {
                Readout::None => MeasurementBasis::sigma_z(),
                Readout::Fixed(b) => *b,
                Readout::Adiabatic(s) => MeasurementBasis::adiabatic(s, traj.times[i]),
                Readout::Sld => sld_basis(psi, d).basis,
            };
            p0.push(basis.plus.inner(psi).norm_sqr());
            p1.push(basis.minus.inner(psi).norm_sqr());
            if !matches!(readout, Readout::None) {
                let out = cfi_projective(psi, d, &basis);
                divergent |= out.divergent;
                cfi.push(out.value);
            }
        }

        let curve = Self {
            times: traj.times.clone(),
            qfi,
            cfi: if matches!(readout, Readout::None) {
                None
            } else {
                Some(cfi)
            },
            p0,
            p1,
            bound: None,
            divergent_cfi: divergent,
        };
        curve.validate()?;
        Ok(curve)
    }

    /// Attaches the exact control bound accumulated from `t_start`.
    pub fn with_bound(mut self, problem: &EstimationProblem, t_start: f64) -> Self {
        self.bound = Some(
            self.times
                .iter()
                .map(|&t| control_bound_at(problem, t_start, t))
                .collect(),
        );
        self
    }

    /// Checks the structural invariants: equal column lengths, qfi ≥ 0,
    /// cfi ≤ qfi (within 1e−8 relative slack), p0 + p1 = 1 within 1e−9.
    pub fn validate(&self) -> Result<()> {
        let n = self.times.len();
        let lengths_ok = self.qfi.len() == n
            && self.p0.len() == n
            && self.p1.len() == n
            && self.cfi.as_ref().map_or(true, |c| c.len() == n)
            && self.bound.as_ref().map_or(true, |b| b.len() == n);
        if !lengths_ok {
            return Err(Error::CurveInvariant {
                detail: "column lengths differ".into(),
            });
        }
        for i in 0..n {
            if self.qfi[i] < 0.0 {
                return Err(Error::CurveInvariant {
                    detail: format!("qfi[{i}] = {} < 0", self.qfi[i]),
                });
            }
            if let Some(cfi) = &self.cfi {
                if cfi[i] > self.qfi[i] * (1.0 + 1e-8) + 1e-12 {
                    return Err(Error::CurveInvariant {
                        detail: format!(
                            "cfi[{i}] = {} exceeds qfi[{i}] = {}",
                            cfi[i], self.qfi[i]
                        ),
                    });
                }
            }
            let psum = self.p0[i] + self.p1[i];
            if (psum - 1.0).abs() > 1e-9 {
                return Err(Error::CurveInvariant {
                    detail: format!("p0[{i}] + p1[{i}] = {psum} differs from 1"),
                });
            }
        }
        Ok(())
    }
}
