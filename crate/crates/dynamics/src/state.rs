//! Two-component complex state vectors.

use crate::C64;

/// A (not necessarily normalized) vector in the two-level Hilbert space,
/// components ordered (|0⟩, |1⟩). Derivative states |∂_g ψ⟩ reuse this type
/// and are generally unnormalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelState {
    pub c0: C64,
    pub c1: C64,
}

impl TwoLevelState {
    pub fn new(c0: C64, c1: C64) -> Self {
        Self { c0, c1 }
    }

    pub fn basis0() -> Self {
        Self::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0))
    }

    pub fn basis1() -> Self {
        Self::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0))
    }

    /// cos(α/2)|0⟩ + e^{iβ} sin(α/2)|1⟩
    pub fn bloch(alpha: f64, beta: f64) -> Self {
        Self::new(
            C64::new((0.5 * alpha).cos(), 0.0),
            C64::from_polar((0.5 * alpha).sin(), beta),
        )
    }

    pub fn zero() -> Self {
        Self::new(C64::new(0.0, 0.0), C64::new(0.0, 0.0))
    }

    /// ⟨self|other⟩ (antilinear in self).
    pub fn inner(&self, other: &Self) -> C64 {
        self.c0.conj() * other.c0 + self.c1.conj() * other.c1
    }

    pub fn norm_sq(&self) -> f64 {
        self.c0.norm_sqr() + self.c1.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scaled(&self, s: C64) -> Self {
        Self::new(s * self.c0, s * self.c1)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.c0 + other.c0, self.c1 + other.c1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.c0 - other.c0, self.c1 - other.c1)
    }

    pub fn normalized(&self) -> Self {
        self.scaled(C64::new(1.0 / self.norm(), 0.0))
    }
}
