//! Retarded-time phase of a photon crossing a rigidly connected mirror pair
//! carried by a moving platform.
//!
//! The pieces, bottom-up:
//!
//! - [`model`]: platform trajectories and validated scenario geometry.
//! - [`solver`]: implicit leg-time solving, single traversals, phase traces,
//!   received frequency, retroreflector and counter-propagating baselines.
//! - [`sweep`]: Signal Ratio of the pair over a retroreflector vs. modulation
//!   frequency.
//! - [`formulary`]: closed-form phases, Sagnac, delay displacement,
//!   gravitational shifts and the photon-stream ledger.
//! - [`spectrum`]: sideband spectrum of the transmitted field vs. Bessel
//!   weights.
//! - [`cli`]: the `mirrorpair` command line.

pub mod cli;
pub mod constants;
pub mod formulary;
pub mod model;
pub mod solver;
pub mod spectrum;
pub mod sweep;

pub use constants::{Constants, C, G, G0, HBAR};
pub use model::{make_scenario, LegMode, ModelError, Scenario, ScenarioConfig, Trajectory};
pub use solver::{
    phase_trace, received_frequency, received_frequency_shift, retro_traverse, traverse, Method,
    PhaseTrace, RetroResult, SolverError, TraversalResult,
};
pub use spectrum::{SpectrumError, SpectrumLine};
pub use sweep::{signal_ratio, SignalRatioPoint, SweepError};
