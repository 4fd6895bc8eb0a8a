//! Energy handed to the ring by the barrier at the candidate's non-nodal
//! point, for each pair of chamber modes.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{Chamber, ChamberGeometry};
use crate::error::{invalid, Result};
use crate::ring::PhysicalConstants;

/// Which constant is subtracted from the post-insertion chamber energies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnergyVariant {
    /// `(π²ℏ²/2M)(n²/α² + m²/(2π−α)² − 1/(4π²))`, the subtracted term
    /// being `ℏ²/(8M)`.
    #[default]
    PaperLiteral,
    /// `E^α_n + E^{2π−α}_m − ℏ²/(2M)`, subtracting the actual ring energy
    /// of either candidate.
    Conserving,
}

impl EnergyVariant {
    pub fn name(self) -> &'static str {
        match self {
            EnergyVariant::PaperLiteral => "paper-literal",
            EnergyVariant::Conserving => "conserving",
        }
    }
}

impl std::str::FromStr for EnergyVariant {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-literal" | "paper" => Ok(EnergyVariant::PaperLiteral),
            "conserving" => Ok(EnergyVariant::Conserving),
            other => Err(invalid(format!("unknown energy variant '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyTransfer {
    pub n: u32,
    pub m: u32,
    pub delta_e_paper: f64,
    pub delta_e_conserving: f64,
}

/// `E^α_n + E^{2π−α}_m`, the energy of the chamber product mode `(n, m)`.
fn chamber_pair_energy(n: u32, m: u32, geometry: &ChamberGeometry, k: &PhysicalConstants) -> f64 {
    geometry.well(Chamber::First).energy(n, k) + geometry.well(Chamber::Second).energy(m, k)
}

pub fn delta_energy(
    n: u32,
    m: u32,
    geometry: &ChamberGeometry,
    k: &PhysicalConstants,
    variant: EnergyVariant,
) -> Result<f64> {
    if n < 1 || m < 1 {
        return Err(invalid("mode indices must be at least 1"));
    }
    let pair = chamber_pair_energy(n, m, geometry, k);
    let subtracted = match variant {
        EnergyVariant::PaperLiteral => PI * PI * k.kinetic_scale() / (4.0 * PI * PI),
        EnergyVariant::Conserving => k.kinetic_scale(),
    };
    Ok(pair - subtracted)
}

pub fn energy_transfer(n: u32, m: u32, geometry: &ChamberGeometry, k: &PhysicalConstants) -> Result<EnergyTransfer> {
    Ok(EnergyTransfer {
        n,
        m,
        delta_e_paper: delta_energy(n, m, geometry, k, EnergyVariant::PaperLiteral)?,
        delta_e_conserving: delta_energy(n, m, geometry, k, EnergyVariant::Conserving)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn quarter() -> ChamberGeometry {
        ChamberGeometry::new(FRAC_PI_4).unwrap()
    }

    #[test]
    fn ground_pair_at_quarter_pi() {
        let k = PhysicalConstants::default();
        let e = delta_energy(1, 1, &quarter(), &k, EnergyVariant::PaperLiteral).unwrap();
        // Written out independently of the chamber spectra.
        let expected = 8.0 + 8.0 / 49.0 - 1.0 / 8.0;
        assert!((e - expected).abs() < 1e-12);
        assert!((e - 8.038).abs() < 1e-3);
    }

    #[test]
    fn variants_differ_by_constant() {
        let k = PhysicalConstants::default();
        for (n, m) in [(1, 1), (3, 7), (50, 2), (100, 100)] {
            let t = energy_transfer(n, m, &quarter(), &k).unwrap();
            assert!((t.delta_e_paper - t.delta_e_conserving - 0.375).abs() < 1e-9);
        }
    }

    #[test]
    fn strictly_increasing_in_each_index() {
        let k = PhysicalConstants::new(1.3, 0.7).unwrap();
        let g = quarter();
        for variant in [EnergyVariant::PaperLiteral, EnergyVariant::Conserving] {
            for m in 1..10 {
                for n in 1..10 {
                    let e = delta_energy(n, m, &g, &k, variant).unwrap();
                    assert!(delta_energy(n + 1, m, &g, &k, variant).unwrap() > e);
                    assert!(delta_energy(n, m + 1, &g, &k, variant).unwrap() > e);
                }
            }
        }
    }

    #[test]
    fn zero_index_rejected() {
        let k = PhysicalConstants::default();
        assert!(delta_energy(0, 1, &quarter(), &k, EnergyVariant::Conserving).is_err());
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("conserving".parse::<EnergyVariant>().unwrap(), EnergyVariant::Conserving);
        assert_eq!("paper-literal".parse::<EnergyVariant>().unwrap(), EnergyVariant::PaperLiteral);
        assert!("x".parse::<EnergyVariant>().is_err());
    }
}
