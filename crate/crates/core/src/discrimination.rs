//! Bayes cost of telling `φ` from `ψ` with equal priors, before the
//! barriers go in (the Helstrom bound) and after, when each candidate is
//! entangled with the barrier that fed it energy.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exec::Exec;
use crate::expansion::{expand_candidate, Chamber, ChamberExpansion, ChamberGeometry};
use crate::ring::{ring_overlap, Candidate, RingState};

/// Both hypotheses are equally likely.
pub const PRIOR: f64 = 0.5;

/// `½ − ½√(1 − |⟨a|b⟩|²)`.
pub fn helstrom_cost(overlap_sq: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&overlap_sq) {
        return Err(invalid(format!("squared overlap must lie in [0, 1], got {overlap_sq}")));
    }
    Ok(0.5 - 0.5 * (1.0 - overlap_sq).sqrt())
}

/// Minimum error from the spectrum of `½ρ_φ − ½ρ_ψ`, with the pair
/// embedded in the real plane as `φ = (1, 0)`, `ψ = (cos α, sin α)`.
pub fn helstrom_oracle(alpha: f64) -> Result<f64> {
    if !(alpha.is_finite() && (0.0..=FRAC_PI_2).contains(&alpha)) {
        return Err(invalid(format!("alpha must lie in [0, π/2], got {alpha}")));
    }
    let phi = Vector2::new(1.0, 0.0);
    let psi = Vector2::new(alpha.cos(), alpha.sin());
    let rho_phi: Matrix2<f64> = phi * phi.transpose();
    let rho_psi: Matrix2<f64> = psi * psi.transpose();
    let gamma = rho_phi * PRIOR - rho_psi * (1.0 - PRIOR);
    let trace_norm: f64 = gamma.symmetric_eigen().eigenvalues.iter().map(|e| e.abs()).sum();
    Ok(0.5 * (1.0 - trace_norm))
}

/// State of one barrier after insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BarrierTag {
    /// Inserted at a node, nothing transferred.
    Ground,
    /// Transferred the energy of chamber modes `(n, m)`.
    Transfer { n: u32, m: u32 },
}

/// Inner products between barrier states: `⟨ground|ground⟩ = 1`,
/// `⟨(n,m)|(n,m)⟩ = 1`, `⟨ground|(n,m)⟩ = ε`, and distinct transfer states
/// are orthogonal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierModel {
    epsilon: f64,
}

impl BarrierModel {
    /// Perfectly distinguishable barrier states.
    pub const IDEAL: BarrierModel = BarrierModel { epsilon: 0.0 };

    pub fn new(epsilon: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(invalid(format!("epsilon must lie in [0, 1], got {epsilon}")));
        }
        Ok(Self { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn inner(&self, a: BarrierTag, b: BarrierTag) -> f64 {
        match (a, b) {
            (BarrierTag::Ground, BarrierTag::Ground) => 1.0,
            (BarrierTag::Ground, BarrierTag::Transfer { .. })
            | (BarrierTag::Transfer { .. }, BarrierTag::Ground) => self.epsilon,
            (x, y) => {
                if x == y {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

impl Default for BarrierModel {
    fn default() -> Self {
        Self::IDEAL
    }
}

/// One term `amplitude · |n⟩₁ ⊗ |m⟩₂ ⊗ |barrier_zero⟩ ⊗ |barrier_alpha⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtendedEntry {
    pub n: u32,
    pub m: u32,
    pub barrier_zero: BarrierTag,
    pub barrier_alpha: BarrierTag,
    pub amplitude: Complex64,
}

/// Ring particle plus both barriers, directly after insertion.
///
/// Stored as a sparse list sorted by `(n, m)`; each ring index pair appears
/// once.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtendedState {
    geometry: ChamberGeometry,
    candidate: Candidate,
    truncation: usize,
    raw_norm_sq: f64,
    entries: Vec<ExtendedEntry>,
}

impl ExtendedState {
    pub fn candidate(&self) -> Candidate {
        self.candidate
    }

    pub fn geometry(&self) -> &ChamberGeometry {
        &self.geometry
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn entries(&self) -> &[ExtendedEntry] {
        &self.entries
    }

    /// `Σ_{n,m} |A_n B_m|²` before normalization.
    pub fn raw_norm_sq(&self) -> f64 {
        self.raw_norm_sq
    }

    fn find(&self, n: u32, m: u32) -> Option<&ExtendedEntry> {
        self.entries
            .binary_search_by(|e| (e.n, e.m).cmp(&(n, m)))
            .ok()
            .map(|i| &self.entries[i])
    }
}

/// Tensor-form extended state `Σ A_n B_m |n⟩|m⟩ ⊗ ω(0) ⊗ ω(α)`.
///
/// `φ` has its node at 0, so the barrier at 0 stays in its ground state and
/// the barrier at `α` carries the `(n, m)` transfer; `ψ` is the mirror case.
pub fn build_extended(expansion: &ChamberExpansion) -> Result<ExtendedState> {
    build_extended_with(expansion, Exec::default())
}

pub fn build_extended_with(expansion: &ChamberExpansion, exec: Exec) -> Result<ExtendedState> {
    let truncation = expansion.truncation();
    if truncation == 0 {
        return Err(invalid("cannot build an extended state from an empty expansion"));
    }
    let first = expansion.normalized(Chamber::First);
    let second = expansion.normalized(Chamber::Second);
    let raw_norm_sq = expansion.chamber_weight(Chamber::First) * expansion.chamber_weight(Chamber::Second);
    if raw_norm_sq.is_nan() || raw_norm_sq <= 0.0 {
        return Err(invalid("extended state has zero norm"));
    }
    let scale = raw_norm_sq.sqrt().recip();
    let candidate = expansion.candidate();
    let rows = exec.map_indexed(truncation, |i| {
        let n = i as u32 + 1;
        (0..truncation)
            .map(|j| {
                let m = j as u32 + 1;
                let transfer = BarrierTag::Transfer { n, m };
                let (barrier_zero, barrier_alpha) = match candidate {
                    Candidate::Phi => (BarrierTag::Ground, transfer),
                    Candidate::Psi => (transfer, BarrierTag::Ground),
                };
                ExtendedEntry {
                    n,
                    m,
                    barrier_zero,
                    barrier_alpha,
                    amplitude: Complex64::new(first[i] * second[j] * scale, 0.0),
                }
            })
            .collect::<Vec<_>>()
    });
    Ok(ExtendedState {
        geometry: *expansion.geometry(),
        candidate,
        truncation,
        raw_norm_sq,
        entries: rows.into_iter().flatten().collect(),
    })
}

/// `⟨s1|s2⟩`: ring indices must match, barrier factors come from `model`.
pub fn extended_overlap(s1: &ExtendedState, s2: &ExtendedState, model: &BarrierModel) -> Result<Complex64> {
    extended_overlap_with(s1, s2, model, Exec::default())
}

pub fn extended_overlap_with(
    s1: &ExtendedState,
    s2: &ExtendedState,
    model: &BarrierModel,
    exec: Exec,
) -> Result<Complex64> {
    if s1.geometry != s2.geometry || s1.truncation != s2.truncation {
        return Err(invalid("extended states have different geometry or truncation"));
    }
    let terms = exec.map_slice(&s1.entries, |e| match s2.find(e.n, e.m) {
        Some(o) => {
            let barrier =
                model.inner(e.barrier_zero, o.barrier_zero) * model.inner(e.barrier_alpha, o.barrier_alpha);
            e.amplitude.conj() * o.amplitude * barrier
        }
        None => Complex64::new(0.0, 0.0),
    });
    Ok(terms.into_iter().sum())
}

/// Costs before and after insertion for one `(α, ε, N)` point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscriminationReport {
    pub alpha: f64,
    pub epsilon: f64,
    pub prior: f64,
    /// `|⟨φ|ψ⟩|²`.
    pub overlap_before: f64,
    pub cost_before: f64,
    /// `|⟨Φ_after|Ψ_after⟩|²`.
    pub overlap_after: f64,
    pub cost_after: f64,
    pub truncation: usize,
    pub deficit_phi: f64,
    pub deficit_psi: f64,
}

impl DiscriminationReport {
    /// `true` when the post-insertion cost differs from the Helstrom bound
    /// by more than `tol`. That is expected even at `ε = 1`: the tensor form
    /// is not the single-particle overlap.
    pub fn after_differs_from_before(&self, tol: f64) -> bool {
        (self.cost_after - self.cost_before).abs() > tol
    }
}

pub fn post_insertion_cost(alpha: f64, truncation: usize, model: &BarrierModel) -> Result<DiscriminationReport> {
    post_insertion_cost_with(alpha, truncation, model, Exec::default())
}

pub fn post_insertion_cost_with(
    alpha: f64,
    truncation: usize,
    model: &BarrierModel,
    exec: Exec,
) -> Result<DiscriminationReport> {
    let geometry = ChamberGeometry::new(alpha)?;
    let phi = RingState::candidate(Candidate::Phi, alpha)?;
    let psi = RingState::candidate(Candidate::Psi, alpha)?;
    let overlap_before = ring_overlap(&phi, &psi).norm_sqr().min(1.0);

    let phi_exp = expand_candidate(Candidate::Phi, &geometry, truncation, exec)?;
    let psi_exp = expand_candidate(Candidate::Psi, &geometry, truncation, exec)?;
    let phi_ext = build_extended_with(&phi_exp, exec)?;
    let psi_ext = build_extended_with(&psi_exp, exec)?;
    let overlap_after = extended_overlap_with(&phi_ext, &psi_ext, model, exec)?.norm_sqr().min(1.0);

    Ok(DiscriminationReport {
        alpha,
        epsilon: model.epsilon(),
        prior: PRIOR,
        overlap_before,
        cost_before: helstrom_cost(overlap_before)?,
        overlap_after,
        cost_after: helstrom_cost(overlap_after)?,
        truncation,
        deficit_phi: phi_exp.deficit(),
        deficit_psi: psi_exp.deficit(),
    })
}
