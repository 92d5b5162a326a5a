//! Simulator for a three-mode optomechanical entanglement interface: two
//! cavity modes coupled through one mechanical oscillator.
//!
//! The crate provides
//! - [`model`]: physical parameters, dynamics matrices, stability and
//!   eigenmode (dark/bright mode) analysis;
//! - [`gaussian`]: covariance-matrix time evolution, stationary states, and
//!   logarithmic negativity;
//! - [`spectra`]: frequency-domain input-output analysis and filtered-output
//!   entanglement spectra;
//! - [`fock`]: an independent truncated-Fock-space Lindblad master-equation
//!   oracle, also used for the discrete-state beamsplitter scheme.
//!
//! All numerics are generic over the scalar type (`f32` or `f64`); concrete
//! aliases for the common `f64` case are exported at the crate root.

pub mod error;
pub mod fock;
pub mod gaussian;
pub mod model;
pub mod real;
pub mod spectra;
pub mod symplectic;
pub mod util;

pub use error::{Error, Result};
pub use real::Real;

// Concrete f64 aliases.
pub type InterfaceModel64 = model::InterfaceModel<f64>;
pub type CouplingSchedule64 = model::CouplingSchedule<f64>;
pub type DynamicsMatrices64 = model::DynamicsMatrices<f64>;
pub type EigenmodeReport64 = model::EigenmodeReport<f64>;
pub type StabilityReport64 = model::StabilityReport<f64>;
pub type CovarianceState64 = gaussian::CovarianceState<f64>;
pub type EntanglementSeries64 = gaussian::EntanglementSeries<f64>;
pub type FilterSpec64 = spectra::FilterSpec<f64>;
pub type SpectralResult64 = spectra::SpectralResult<f64>;
pub type FockState64 = fock::FockState<f64>;

// And f32, for quick low-precision scans.
pub type InterfaceModel32 = model::InterfaceModel<f32>;
pub type CouplingSchedule32 = model::CouplingSchedule<f32>;
pub type CovarianceState32 = gaussian::CovarianceState<f32>;
