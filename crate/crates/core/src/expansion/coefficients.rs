//! Closed-form chamber coefficients for the two candidates.
//!
//! Two sets are kept: the formulas exactly as printed, and the resolved set
//! whose signs agree with direct projection. They differ only in `d_n`,
//! where the printed expression carries the wrong overall sign.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{Chamber, ChamberGeometry};
use crate::error::{invalid, Result};
use crate::ring::Candidate;

const MIN_DENOMINATOR: f64 = 1e-300;

/// Which of the four coefficient families: `a`/`b` expand `φ` in chamber
/// 1/2, `c`/`d` expand `ψ` in chamber 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientKind {
    A,
    B,
    C,
    D,
}

impl CoefficientKind {
    pub const ALL: [CoefficientKind; 4] =
        [CoefficientKind::A, CoefficientKind::B, CoefficientKind::C, CoefficientKind::D];

    pub fn of(candidate: Candidate, chamber: Chamber) -> Self {
        match (candidate, chamber) {
            (Candidate::Phi, Chamber::First) => CoefficientKind::A,
            (Candidate::Phi, Chamber::Second) => CoefficientKind::B,
            (Candidate::Psi, Chamber::First) => CoefficientKind::C,
            (Candidate::Psi, Chamber::Second) => CoefficientKind::D,
        }
    }

    pub fn candidate(self) -> Candidate {
        match self {
            CoefficientKind::A | CoefficientKind::B => Candidate::Phi,
            CoefficientKind::C | CoefficientKind::D => Candidate::Psi,
        }
    }

    pub fn chamber(self) -> Chamber {
        match self {
            CoefficientKind::A | CoefficientKind::C => Chamber::First,
            CoefficientKind::B | CoefficientKind::D => Chamber::Second,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CoefficientKind::A => "a",
            CoefficientKind::B => "b",
            CoefficientKind::C => "c",
            CoefficientKind::D => "d",
        }
    }
}

fn alternating(n: u32) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn guarded(num: f64, den: f64) -> Result<f64> {
    if den.abs() < MIN_DENOMINATOR {
        return Err(invalid(format!("coefficient denominator {den:e} too close to zero")));
    }
    Ok(num / den)
}

/// `α n / (α² − π² n²) · sin α`, shared by `a_n` and `c_n`.
fn first_chamber_core(n: u32, alpha: f64) -> Result<f64> {
    let nf = f64::from(n);
    guarded(alpha * nf * alpha.sin(), alpha * alpha - PI * PI * nf * nf)
}

/// `(2π − α) n / ((α − (n+2)π)(α + (n−2)π)) · sin α`, shared by `b_n` and `d_n`.
fn second_chamber_core(n: u32, alpha: f64) -> Result<f64> {
    let nf = f64::from(n);
    let width = 2.0 * PI - alpha;
    let den = (alpha - (nf + 2.0) * PI) * (alpha + (nf - 2.0) * PI);
    guarded(width * nf * alpha.sin(), den)
}

fn check_level(n: u32) -> Result<()> {
    if n < 1 {
        return Err(invalid("mode index must be at least 1"));
    }
    Ok(())
}

/// The printed formula for `kind`.
pub fn printed_coefficient(kind: CoefficientKind, n: u32, geometry: &ChamberGeometry) -> Result<f64> {
    check_level(n)?;
    let alpha = geometry.alpha();
    Ok(match kind {
        CoefficientKind::A => alternating(n) * first_chamber_core(n, alpha)?,
        CoefficientKind::B => -second_chamber_core(n, alpha)?,
        CoefficientKind::C => first_chamber_core(n, alpha)?,
        CoefficientKind::D => alternating(n) * second_chamber_core(n, alpha)?,
    })
}

/// Closed form with signs matching `(1/π) ∫ profile · sin(nπ(θ − start)/width)`.
pub fn coefficient(kind: CoefficientKind, n: u32, geometry: &ChamberGeometry) -> Result<f64> {
    let printed = printed_coefficient(kind, n, geometry)?;
    Ok(match kind {
        CoefficientKind::D => -printed,
        _ => printed,
    })
}

pub fn coeff_a(n: u32, alpha: f64) -> Result<f64> {
    coefficient(CoefficientKind::A, n, &ChamberGeometry::new(alpha)?)
}

pub fn coeff_b(n: u32, alpha: f64) -> Result<f64> {
    coefficient(CoefficientKind::B, n, &ChamberGeometry::new(alpha)?)
}

pub fn coeff_c(n: u32, alpha: f64) -> Result<f64> {
    coefficient(CoefficientKind::C, n, &ChamberGeometry::new(alpha)?)
}

pub fn coeff_d(n: u32, alpha: f64) -> Result<f64> {
    coefficient(CoefficientKind::D, n, &ChamberGeometry::new(alpha)?)
}
