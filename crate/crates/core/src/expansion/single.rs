//! A single barrier inserted into the ring turns it into one well of width
//! `2π` starting at the barrier. Inserting at a node of the state leaves it
//! a single eigenmode; anywhere else the expansion has infinitely many terms
//! and unbounded mean energy.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::Well;
use crate::error::{invalid, Result};
use crate::ring::{PhysicalConstants, RingState};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingleBarrierExpansion {
    barrier: f64,
    offset: f64,
    coefficients: Vec<f64>,
}

impl SingleBarrierExpansion {
    pub fn well(&self) -> Well {
        Well { start: self.barrier, width: TAU }
    }

    pub fn barrier(&self) -> f64 {
        self.barrier
    }

    /// Orthonormal coefficients for modes `1..=N` (index `k − 1`).
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn truncation(&self) -> usize {
        self.coefficients.len()
    }

    pub fn deficit(&self) -> f64 {
        1.0 - self.coefficients.iter().map(|c| c * c).sum::<f64>()
    }

    /// Number of coefficients with magnitude above `tol`.
    pub fn support(&self, tol: f64) -> usize {
        self.coefficients.iter().filter(|c| c.abs() > tol).count()
    }

    /// Truncated mean energy `Σ |c_k|² ℏ²k²/(8M)`; grows without bound in
    /// `N` unless the barrier sits on a node.
    pub fn mean_energy(&self, k: &PhysicalConstants) -> f64 {
        let well = self.well();
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| c * c * well.energy(i as u32 + 1, k))
            .sum()
    }
}

/// `⟨χ_k | state⟩` for the well `(β, β + 2π)`, `χ_k = sin(k(θ − β)/2)/√π`.
///
/// With `γ = β − offset`: `cos γ` for `k = 2`, `4k sin γ / (π(k² − 4))` for
/// odd `k`, zero for the remaining even modes.
fn single_well_coefficient(k: u32, gamma: f64) -> f64 {
    match k {
        2 => gamma.cos(),
        k if k % 2 == 1 => {
            let kf = f64::from(k);
            4.0 * kf * gamma.sin() / (PI * (kf * kf - 4.0))
        }
        _ => 0.0,
    }
}

pub fn expand_single_barrier(state: &RingState, barrier: f64, truncation: usize) -> Result<SingleBarrierExpansion> {
    if !barrier.is_finite() {
        return Err(invalid("barrier position must be finite"));
    }
    if truncation < 1 {
        return Err(invalid("truncation must be at least 1"));
    }
    let barrier = barrier.rem_euclid(TAU);
    let gamma = barrier - state.offset();
    let scale = state.normalization() * PI.sqrt();
    let coefficients = (1..=truncation as u32)
        .map(|k| scale * single_well_coefficient(k, gamma))
        .collect();
    Ok(SingleBarrierExpansion { barrier, offset: state.offset(), coefficients })
}
