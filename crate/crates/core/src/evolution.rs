//! Free evolution inside one chamber after the barriers are in.
//!
//! The chambers are decoupled, so each evolves under its own well spectrum
//! `E_n = n²π²ℏ²/(2ML²)`. All phases are written as `2π n² t/T` with `T` the
//! revival period, reduced modulo one before the trigonometric call so that
//! `t = T` returns every coefficient bit for bit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exec::Exec;
use crate::expansion::{Chamber, ChamberExpansion, ChamberGeometry, Well};
use crate::ring::PhysicalConstants;

/// Default density sampling grid per chamber.
pub const DEFAULT_GRID_POINTS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolvedChamberState {
    geometry: ChamberGeometry,
    chamber: Chamber,
    coefficients: Vec<Complex64>,
    time: f64,
    constants: PhysicalConstants,
}

impl EvolvedChamberState {
    pub fn geometry(&self) -> &ChamberGeometry {
        &self.geometry
    }

    pub fn chamber(&self) -> Chamber {
        self.chamber
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn well(&self) -> Well {
        self.geometry.well(self.chamber)
    }

    pub fn norm_sq(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Applies `exp(+iE_n t/ℏ)`, undoing [`evolve`] over the same `t`.
    pub fn reverse(&self, t: f64) -> Result<Self> {
        check_time(t)?;
        let period = self.well().revival_period(&self.constants);
        let coefficients = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| c * phase(i as u32 + 1, t, period).conj())
            .collect();
        Ok(Self { coefficients, time: self.time - t, ..self.clone() })
    }

    /// Wave function amplitude at `theta`.
    pub fn amplitude(&self, theta: f64) -> Result<Complex64> {
        let well = self.well();
        if !well.contains(theta) {
            return Err(invalid(format!(
                "theta = {theta} outside chamber [{}, {}]",
                well.start(),
                well.end()
            )));
        }
        Ok(self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| c * well.mode(i as u32 + 1, theta))
            .sum())
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(invalid(format!("time must be finite and non-negative, got {t}")));
    }
    Ok(())
}

/// `exp(−iE_n t/ℏ) = exp(−2πi n² t/T)`.
fn phase(n: u32, t: f64, period: f64) -> Complex64 {
    let cycles = (t / period).fract();
    let n_sq = f64::from(n) * f64::from(n);
    let turns = (n_sq * cycles).fract();
    Complex64::from_polar(1.0, -std::f64::consts::TAU * turns)
}

pub fn evolve(
    expansion: &ChamberExpansion,
    chamber: Chamber,
    t: f64,
    k: &PhysicalConstants,
) -> Result<EvolvedChamberState> {
    check_time(t)?;
    let geometry = *expansion.geometry();
    let period = geometry.well(chamber).revival_period(k);
    let coefficients = expansion
        .normalized(chamber)
        .iter()
        .enumerate()
        .map(|(i, &c)| phase(i as u32 + 1, t, period) * c)
        .collect();
    Ok(EvolvedChamberState { geometry, chamber, coefficients, time: t, constants: *k })
}

/// `|ψ(θ, t)|²` at each grid point.
pub fn sample_density(state: &EvolvedChamberState, grid: &[f64]) -> Result<Vec<f64>> {
    sample_density_with(state, grid, Exec::default())
}

pub fn sample_density_with(state: &EvolvedChamberState, grid: &[f64], exec: Exec) -> Result<Vec<f64>> {
    let well = state.well();
    if let Some(bad) = grid.iter().find(|&&x| !well.contains(x)) {
        return Err(invalid(format!(
            "grid point {bad} outside chamber [{}, {}]",
            well.start(),
            well.end()
        )));
    }
    Ok(exec.map_slice(grid, |&theta| {
        state.amplitude(theta).map(|a| a.norm_sqr()).unwrap_or(0.0)
    }))
}

/// `points` uniformly spaced positions covering the chamber, endpoints
/// included.
pub fn chamber_grid(well: &Well, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![well.start() + 0.5 * well.width()],
        _ => {
            let h = well.width() / (points - 1) as f64;
            (0..points)
                .map(|i| if i + 1 == points { well.end() } else { well.start() + h * i as f64 })
                .collect()
        }
    }
}

/// `Σ |A_n|² exp(−iE_n t/ℏ) / Σ |A_n|²`.
pub fn autocorrelation(
    expansion: &ChamberExpansion,
    chamber: Chamber,
    t: f64,
    k: &PhysicalConstants,
) -> Result<Complex64> {
    check_time(t)?;
    let period = expansion.geometry().well(chamber).revival_period(k);
    let coeffs = expansion.normalized(chamber);
    let weight: f64 = coeffs.iter().map(|c| c * c).sum();
    if weight.is_nan() || weight <= 0.0 {
        return Err(invalid("chamber carries no probability"));
    }
    let sum: Complex64 = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| phase(i as u32 + 1, t, period) * (c * c))
        .sum();
    Ok(sum / weight)
}

/// One density sample of a snapshot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnapshotSample {
    pub theta: f64,
    pub density: f64,
    pub t: f64,
    pub chamber: u8,
}

/// Density snapshots at the given fractions of the chamber's revival
/// period, ordered by time then position.
pub fn snapshots(
    expansion: &ChamberExpansion,
    chamber: Chamber,
    fractions: &[f64],
    grid_points: usize,
    k: &PhysicalConstants,
    exec: Exec,
) -> Result<Vec<SnapshotSample>> {
    let well = expansion.geometry().well(chamber);
    let period = well.revival_period(k);
    let grid = chamber_grid(&well, grid_points);
    let mut out = Vec::with_capacity(grid.len() * fractions.len());
    for &f in fractions {
        let t = f * period;
        let state = evolve(expansion, chamber, t, k)?;
        let density = sample_density_with(&state, &grid, exec)?;
        out.extend(grid.iter().zip(density).map(|(&theta, density)| SnapshotSample {
            theta,
            density,
            t,
            chamber: chamber.index(),
        }));
    }
    Ok(out)
}
