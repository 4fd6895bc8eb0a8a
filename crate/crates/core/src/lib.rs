//! Binary discrimination of two ring states, before and after two
//! impenetrable barriers are dropped instantaneously onto the ring.
//!
//! * [`ring`]: constants, candidate states `φ = sin θ/√π` and
//!   `ψ = sin(θ − α)/√π`, exact ring overlaps.
//! * [`expansion`]: re-expansion into the two chamber wells, quadrature
//!   oracle, energy transfer spectrum, single-barrier insertion.
//! * [`discrimination`]: Helstrom cost, barrier-entangled extended states and
//!   the post-insertion cost.
//! * [`evolution`]: free evolution inside a chamber, density snapshots and
//!   autocorrelation.
//! * [`cli`]: the `helstrom-ring` command-line driver.
//!
//! Heavy loops honour [`Exec`]; the `parallel` feature (on by default) runs
//! them on rayon.

pub mod cli;
pub mod discrimination;
pub mod error;
pub mod evolution;
pub mod exec;
pub mod expansion;
pub mod output;
pub mod quadrature;
pub mod ring;

pub use discrimination::{
    build_extended, extended_overlap, helstrom_cost, helstrom_oracle, post_insertion_cost,
    BarrierModel, BarrierTag, DiscriminationReport, ExtendedState,
};
pub use error::{Error, Result};
pub use evolution::{autocorrelation, evolve, sample_density, EvolvedChamberState};
pub use exec::Exec;
pub use expansion::{
    delta_energy, expand, quadrature_project, transition_probability, Chamber, ChamberExpansion,
    ChamberGeometry, EnergyVariant,
};
pub use ring::{ring_energy, ring_overlap, ring_state, Candidate, PhysicalConstants, RingState};
