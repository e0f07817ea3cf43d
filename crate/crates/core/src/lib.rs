//! Exactly solvable pure dephasing of a qubit coupled to a bosonic bath, with
//! the initial state prepared by a measurement on the qubit while it is in
//! equilibrium with the bath.
//!
//! Module map:
//!
//! - [`bloch`]: Bloch-sphere directions, qubit states and 2×2 operators.
//! - [`preparation`]: selective and non-selective preparation schemes, initial
//!   averages and the coherence-enhancement predicate.
//! - [`bath`]: spectral densities and the decoherence / correlation kernels.
//! - [`dynamics`]: closed-form coherence trajectories, purity and entropy.
//! - [`fock`]: truncated-Fock brute-force reference for discrete baths.
//! - [`scenario`]: JSON scenario configs, figure presets and CSV output.
//! - [`verify`]: self-check suites.
//!
//! Each capability has a runnable example, e.g.
//! `cargo run --release --example coherence_enhancement`.

pub mod bath;
pub mod bloch;
pub mod dynamics;
pub mod fock;
pub mod preparation;
pub mod quadrature;
pub mod scenario;
pub mod verify;

pub use bath::{BathSpec, DiscreteMode, ThermalContext};
pub use bloch::{BlochDirection, QubitOperator, QubitState};
pub use dynamics::{coherence_trajectory, DephasingTrajectory, QubitParams, TrajectoryPoint};
pub use fock::{FockMode, FockSystem};
pub use preparation::{InitialAverages, PreparationScheme, SchemeKind};
pub use scenario::{FigurePreset, ScenarioConfig};
