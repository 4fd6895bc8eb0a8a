//! Re-expansion of the candidates after barriers are dropped at `0` and `α`.
//!
//! Chamber 1 is `(0, α)`, chamber 2 is `(α, 2π)`. Each is an infinite well
//! with orthonormal eigenfunctions `χ_n(θ) = √(2/L) sin(nπ(θ − start)/L)`.
//! Coefficients are carried in two conventions:
//!
//! * printed, `a_n = (1/π) ∫ sin θ sin(nπ(θ − start)/L) dθ` and friends, and
//! * orthonormal, `A_n = ⟨χ_n | φ⟩ = √(2π/L) · a_n`.
//!
//! Only the orthonormal set carries probabilities: `Σ A_n² + Σ B_m² → 1`.

mod coefficients;
mod energy;
mod oracle;
mod single;

pub use coefficients::{
    coeff_a, coeff_b, coeff_c, coeff_d, coefficient, printed_coefficient, CoefficientKind,
};
pub use energy::{delta_energy, energy_transfer, EnergyTransfer, EnergyVariant};
pub use oracle::{
    check_coefficients, discrepancies, oracle_coefficient, orthonormal_projection,
    quadrature_project, quadrature_project_fn, CoefficientCheck, Discrepancy, DiscrepancyClass,
    PROJECTION_TOLERANCE,
};
pub use single::{expand_single_barrier, SingleBarrierExpansion};

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exec::Exec;
use crate::ring::{Candidate, PhysicalConstants, RingState};

/// Default truncation for reports.
pub const DEFAULT_TRUNCATION: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chamber {
    #[serde(rename = "1")]
    First,
    #[serde(rename = "2")]
    Second,
}

impl Chamber {
    pub const BOTH: [Chamber; 2] = [Chamber::First, Chamber::Second];

    pub fn index(self) -> u8 {
        match self {
            Chamber::First => 1,
            Chamber::Second => 2,
        }
    }

    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Chamber::First),
            2 => Ok(Chamber::Second),
            other => Err(invalid(format!("chamber must be 1 or 2, got {other}"))),
        }
    }
}

/// Infinite square well on `[start, start + width]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Well {
    start: f64,
    width: f64,
}

impl Well {
    pub fn new(start: f64, width: f64) -> Result<Self> {
        if !start.is_finite() || !(width.is_finite() && width > 0.0) {
            return Err(invalid(format!("bad well [{start}, {start} + {width}]")));
        }
        Ok(Self { start, width })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn end(&self) -> f64 {
        self.start + self.width
    }

    pub fn contains(&self, theta: f64) -> bool {
        theta >= self.start && theta <= self.end()
    }

    /// Orthonormal eigenfunction `χ_n` at `theta`.
    pub fn mode(&self, n: u32, theta: f64) -> f64 {
        (2.0 / self.width).sqrt() * (f64::from(n) * PI * (theta - self.start) / self.width).sin()
    }

    /// `n²π²ℏ²/(2ML²)`.
    pub fn energy(&self, n: u32, k: &PhysicalConstants) -> f64 {
        let n = f64::from(n);
        k.kinetic_scale() * (n * PI / self.width).powi(2)
    }

    /// Period after which every mode phase returns to one, `4ML²/(πℏ)`.
    pub fn revival_period(&self, k: &PhysicalConstants) -> f64 {
        4.0 * k.mass() * self.width * self.width / (PI * k.hbar())
    }
}

/// Barriers at `0` and `α`, with `0 < α ≤ π/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChamberGeometry {
    alpha: f64,
}

impl ChamberGeometry {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0 && alpha <= FRAC_PI_2) {
            return Err(invalid(format!("alpha must lie in (0, π/2], got {alpha}")));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn width(&self, chamber: Chamber) -> f64 {
        match chamber {
            Chamber::First => self.alpha,
            Chamber::Second => TAU - self.alpha,
        }
    }

    pub fn well(&self, chamber: Chamber) -> Well {
        match chamber {
            Chamber::First => Well { start: 0.0, width: self.alpha },
            Chamber::Second => Well { start: self.alpha, width: TAU - self.alpha },
        }
    }

    /// Identifies a ring state as one of the two candidates.
    pub fn candidate_of(&self, state: &RingState) -> Result<Candidate> {
        const TOL: f64 = 1e-12;
        let off = state.offset();
        if off.abs() < TOL || (TAU - off).abs() < TOL {
            Ok(Candidate::Phi)
        } else if (off - self.alpha).abs() < TOL {
            Ok(Candidate::Psi)
        } else {
            Err(invalid(format!(
                "state with offset {off} is neither candidate for alpha = {}",
                self.alpha
            )))
        }
    }
}

/// Truncated coefficient arrays of one candidate in both chambers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChamberExpansion {
    geometry: ChamberGeometry,
    candidate: Candidate,
    printed_first: Vec<f64>,
    printed_second: Vec<f64>,
    normalized_first: Vec<f64>,
    normalized_second: Vec<f64>,
}

impl ChamberExpansion {
    pub fn geometry(&self) -> &ChamberGeometry {
        &self.geometry
    }

    pub fn candidate(&self) -> Candidate {
        self.candidate
    }

    pub fn truncation(&self) -> usize {
        self.printed_first.len()
    }

    /// Coefficients in the printed convention (`a_n`/`b_n` or `c_n`/`d_n`),
    /// with resolved signs. Index `n − 1`.
    pub fn printed(&self, chamber: Chamber) -> &[f64] {
        match chamber {
            Chamber::First => &self.printed_first,
            Chamber::Second => &self.printed_second,
        }
    }

    /// Orthonormal projections (`A_n`/`B_m`). Index `n − 1`.
    pub fn normalized(&self, chamber: Chamber) -> &[f64] {
        match chamber {
            Chamber::First => &self.normalized_first,
            Chamber::Second => &self.normalized_second,
        }
    }

    /// `Σ A_n²` (or `Σ B_m²`): probability of finding the particle in `chamber`
    /// within the truncation.
    pub fn chamber_weight(&self, chamber: Chamber) -> f64 {
        self.normalized(chamber).iter().map(|c| c * c).sum()
    }

    /// `A_n²` or `B_m²`.
    pub fn marginal(&self, chamber: Chamber, n: usize) -> Result<f64> {
        let c = self.index(chamber, n)?;
        Ok(c * c)
    }

    /// Parseval deficit `1 − (Σ A² + Σ B²)`.
    pub fn deficit(&self) -> f64 {
        1.0 - self.chamber_weight(Chamber::First) - self.chamber_weight(Chamber::Second)
    }

    fn index(&self, chamber: Chamber, n: usize) -> Result<f64> {
        let truncation = self.truncation();
        if n < 1 || n > truncation {
            return Err(Error::IndexOutOfRange { index: n, truncation });
        }
        Ok(self.normalized(chamber)[n - 1])
    }
}

pub fn expand(state: &RingState, geometry: &ChamberGeometry, truncation: usize) -> Result<ChamberExpansion> {
    expand_with(state, geometry, truncation, Exec::default())
}

pub fn expand_with(
    state: &RingState,
    geometry: &ChamberGeometry,
    truncation: usize,
    exec: Exec,
) -> Result<ChamberExpansion> {
    if truncation < 1 {
        return Err(invalid("truncation must be at least 1"));
    }
    let candidate = geometry.candidate_of(state)?;
    let build = |chamber: Chamber| -> Result<(Vec<f64>, Vec<f64>)> {
        let kind = CoefficientKind::of(candidate, chamber);
        let scale = (TAU / geometry.width(chamber)).sqrt();
        let printed = exec
            .map_indexed(truncation, |i| coefficient(kind, i as u32 + 1, geometry))
            .into_iter()
            .collect::<Result<Vec<f64>>>()?;
        let normalized = printed.iter().map(|c| scale * c).collect();
        Ok((printed, normalized))
    };
    let (printed_first, normalized_first) = build(Chamber::First)?;
    let (printed_second, normalized_second) = build(Chamber::Second)?;
    Ok(ChamberExpansion {
        geometry: *geometry,
        candidate,
        printed_first,
        printed_second,
        normalized_first,
        normalized_second,
    })
}

/// Expansion of candidate `which` at the given geometry.
pub fn expand_candidate(which: Candidate, geometry: &ChamberGeometry, truncation: usize, exec: Exec) -> Result<ChamberExpansion> {
    let state = RingState::candidate(which, geometry.alpha())?;
    expand_with(&state, geometry, truncation, exec)
}

/// `Σ_n A_n(φ)A_n(ψ) + Σ_m B_m(φ)B_m(ψ)`, which tends to `⟨φ|ψ⟩ = cos α`.
pub fn sum_rule(first: &ChamberExpansion, second: &ChamberExpansion) -> Result<f64> {
    if first.geometry != second.geometry || first.truncation() != second.truncation() {
        return Err(invalid("sum rule needs expansions with matching geometry and truncation"));
    }
    Ok(Chamber::BOTH
        .iter()
        .map(|&c| {
            first
                .normalized(c)
                .iter()
                .zip(second.normalized(c))
                .map(|(x, y)| x * y)
                .sum::<f64>()
        })
        .sum())
}

/// Probability of the chamber product mode `(n, m)` under each convention.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionProbability {
    /// `|a_n b_m|²`, as printed. These do not sum to one.
    pub paper_literal: f64,
    /// `|A_n B_m|²` in the orthonormal bases.
    pub orthonormal: f64,
    /// `|A_n B_m|² / (Σ A² · Σ B²)`, the weight of `(n, m)` in the
    /// normalized extended state.
    pub normalized_model: f64,
}

pub fn transition_probability(expansion: &ChamberExpansion, n: usize, m: usize) -> Result<TransitionProbability> {
    let big_a = expansion.index(Chamber::First, n)?;
    let big_b = expansion.index(Chamber::Second, m)?;
    let a = expansion.printed(Chamber::First)[n - 1];
    let b = expansion.printed(Chamber::Second)[m - 1];
    let orthonormal = (big_a * big_b).powi(2);
    let norm = expansion.chamber_weight(Chamber::First) * expansion.chamber_weight(Chamber::Second);
    Ok(TransitionProbability {
        paper_literal: (a * b).powi(2),
        orthonormal,
        normalized_model: orthonormal / norm,
    })
}

/// `Σ_{n,m} |a_n b_m|²` over the truncation; generally not one.
pub fn paper_literal_total(expansion: &ChamberExpansion) -> f64 {
    let sq = |c: Chamber| expansion.printed(c).iter().map(|x| x * x).sum::<f64>();
    sq(Chamber::First) * sq(Chamber::Second)
}
