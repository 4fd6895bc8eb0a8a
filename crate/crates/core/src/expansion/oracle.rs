//! Quadrature projections onto well eigenfunctions and the record of where
//! the printed closed forms disagree with them.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::coefficients::{coefficient, printed_coefficient, CoefficientKind};
use super::{ChamberGeometry, Well};
use crate::error::{invalid, Result};
use crate::exec::Exec;
use crate::quadrature::{integrate_to_tolerance, Estimate};
use crate::ring::RingState;

/// Absolute tolerance used for every projection integral.
pub const PROJECTION_TOLERANCE: f64 = 1e-12;

/// `∫_well f(θ) sin(nπ(θ − start)/width) dθ`.
pub fn quadrature_project_fn<F: Fn(f64) -> f64>(f: F, well: &Well, n: u32, tol: f64) -> Result<Estimate> {
    if n < 1 {
        return Err(invalid("mode index must be at least 1"));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(invalid("quadrature tolerance must be positive"));
    }
    let k = f64::from(n) * PI / well.width();
    let start = well.start();
    // One panel per half-period of the mode, plus a few for the ring profile.
    let panels = n as usize + (well.width() / PI).ceil() as usize + 1;
    integrate_to_tolerance(
        |theta| f(theta) * (k * (theta - start)).sin(),
        start,
        well.end(),
        panels,
        tol,
    )
}

/// Projection of the unit-amplitude profile `sin(θ − offset)` of `state`;
/// the printed coefficients are this integral divided by `π`.
pub fn quadrature_project(state: &RingState, well: &Well, n: u32, tol: f64) -> Result<Estimate> {
    quadrature_project_fn(|t| state.profile(t), well, n, tol)
}

/// Orthonormal projection `⟨χ_n | state⟩` by quadrature.
pub fn orthonormal_projection(state: &RingState, well: &Well, n: u32, tol: f64) -> Result<f64> {
    let raw = quadrature_project_fn(|t| state.eval(t), well, n, tol)?;
    Ok(raw.value * (2.0 / well.width()).sqrt())
}

/// Quadrature value of coefficient `kind` (raw projection divided by `π`).
pub fn oracle_coefficient(kind: CoefficientKind, n: u32, geometry: &ChamberGeometry) -> Result<f64> {
    let state = RingState::candidate(kind.candidate(), geometry.alpha())?;
    let well = geometry.well(kind.chamber());
    Ok(quadrature_project(&state, &well, n, PROJECTION_TOLERANCE)?.value / PI)
}

/// One coefficient evaluated three ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientCheck {
    pub kind: CoefficientKind,
    pub n: u32,
    pub alpha: f64,
    pub printed: f64,
    pub resolved: f64,
    pub oracle: f64,
}

impl CoefficientCheck {
    pub fn resolved_error(&self) -> f64 {
        (self.resolved - self.oracle).abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscrepancyClass {
    /// Printed value is the negative of the projection.
    SignFlip,
    /// Printed value disagrees in magnitude.
    Magnitude,
}

impl DiscrepancyClass {
    pub fn name(self) -> &'static str {
        match self {
            DiscrepancyClass::SignFlip => "sign-flip",
            DiscrepancyClass::Magnitude => "magnitude",
        }
    }
}

/// A printed coefficient that the quadrature contradicts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub kind: CoefficientKind,
    pub n: u32,
    pub alpha: f64,
    pub printed: f64,
    pub oracle: f64,
    pub class: DiscrepancyClass,
}

/// Evaluates all four families for `n = 1..=n_max`, ordered by `n` then kind.
pub fn check_coefficients(geometry: &ChamberGeometry, n_max: u32, exec: Exec) -> Result<Vec<CoefficientCheck>> {
    let rows = exec.map_indexed(n_max as usize * 4, |i| {
        let n = (i / 4) as u32 + 1;
        let kind = CoefficientKind::ALL[i % 4];
        Ok(CoefficientCheck {
            kind,
            n,
            alpha: geometry.alpha(),
            printed: printed_coefficient(kind, n, geometry)?,
            resolved: coefficient(kind, n, geometry)?,
            oracle: oracle_coefficient(kind, n, geometry)?,
        })
    });
    rows.into_iter().collect()
}

/// Printed values that differ from the oracle by more than `tol`.
pub fn discrepancies(checks: &[CoefficientCheck], tol: f64) -> Vec<Discrepancy> {
    checks
        .iter()
        .filter(|c| (c.printed - c.oracle).abs() > tol)
        .map(|c| Discrepancy {
            kind: c.kind,
            n: c.n,
            alpha: c.alpha,
            printed: c.printed,
            oracle: c.oracle,
            class: if (c.printed + c.oracle).abs() <= tol {
                DiscrepancyClass::SignFlip
            } else {
                DiscrepancyClass::Magnitude
            },
        })
        .collect()
}
