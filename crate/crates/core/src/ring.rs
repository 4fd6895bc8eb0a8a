//! Free particle on a ring of unit radius: constants, candidate states and
//! the exact ring-domain inner products.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Reduced Planck constant and particle mass. Natural units by default.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    hbar: f64,
    mass: f64,
}

impl PhysicalConstants {
    pub fn new(hbar: f64, mass: f64) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(invalid(format!("hbar must be positive and finite, got {hbar}")));
        }
        if !(mass.is_finite() && mass > 0.0) {
            return Err(invalid(format!("mass must be positive and finite, got {mass}")));
        }
        Ok(Self { hbar, mass })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// `hbar^2 / (2 M)`, the scale shared by every spectrum in this crate.
    pub fn kinetic_scale(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self { hbar: 1.0, mass: 1.0 }
    }
}

/// The two candidate wave functions of the discrimination problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Candidate {
    /// `sin(θ)/√π`, node at the barrier placed at 0.
    Phi,
    /// `sin(θ − α)/√π`, node at the barrier placed at α.
    Psi,
}

impl Candidate {
    pub const BOTH: [Candidate; 2] = [Candidate::Phi, Candidate::Psi];

    pub fn name(self) -> &'static str {
        match self {
            Candidate::Phi => "phi",
            Candidate::Psi => "psi",
        }
    }
}

/// A ring state `normalization · sin(θ − offset)` on `θ ∈ [0, 2π]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RingState {
    offset: f64,
    normalization: f64,
}

impl RingState {
    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    /// Amplitude at angle `theta`.
    pub fn eval(&self, theta: f64) -> f64 {
        self.normalization * (theta - self.offset).sin()
    }

    /// Amplitude with the normalization stripped, `sin(θ − offset)`.
    pub fn profile(&self, theta: f64) -> f64 {
        (theta - self.offset).sin()
    }

    /// Candidate `φ` (offset 0) or `ψ` (offset α).
    pub fn candidate(which: Candidate, alpha: f64) -> Result<Self> {
        match which {
            Candidate::Phi => ring_state(0.0),
            Candidate::Psi => ring_state(alpha),
        }
    }
}

/// Builds `sin(θ − offset)/√π`, with the offset reduced into `[0, 2π)`.
pub fn ring_state(offset: f64) -> Result<RingState> {
    if !offset.is_finite() {
        return Err(invalid(format!("ring state offset must be finite, got {offset}")));
    }
    let mut offset = offset.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs.
    if offset >= TAU {
        offset = 0.0;
    }
    Ok(RingState {
        offset,
        normalization: 1.0 / PI.sqrt(),
    })
}

/// `⟨a|b⟩` over the full ring, in closed form.
///
/// `∫₀^{2π} sin(θ − p) sin(θ − q) dθ = π cos(p − q)`, so for the `1/√π`
/// normalization the overlap is `cos(p − q)`.
pub fn ring_overlap(a: &RingState, b: &RingState) -> Complex64 {
    let value = a.normalization * b.normalization * PI * (a.offset - b.offset).cos();
    Complex64::new(value, 0.0)
}

/// Ring eigenvalue `hbar² n² / (2M)`.
pub fn ring_energy(n: u32, k: &PhysicalConstants) -> Result<f64> {
    if n < 1 {
        return Err(invalid("ring level must be at least 1"));
    }
    let n = f64::from(n);
    Ok(k.kinetic_scale() * n * n)
}
