//! Exact thermodynamics of an ideal spin-1/2 Fermi gas confined to a cubic
//! cavity of arbitrary volume.
//!
//! The cavity spectrum is discrete, level degeneracies are finite, and the
//! equilibrium occupation of a level solves a digamma-difference equation
//! instead of the Fermi-Dirac formula. As a consequence populations reach 0
//! and 1 at *finite* energies, the system stays frozen in its ground state
//! below a size-dependent onset temperature, and heat capacities and
//! thermodynamic coefficients jump each time a new level starts to fill.
//!
//! The crate is organized around that pipeline:
//!
//! * [`special`] - log-gamma, the polygamma family and the Fermi-Stoner
//!   functions, the numeric kernels everything else is built on;
//! * [`spectrum`] - enumeration of the cavity levels (gamma^2 shells and
//!   their degeneracies);
//! * [`occupancy`] - the finite-degeneracy occupation equation and the
//!   chemical-potential solve;
//! * [`thermo`] - entropy, energy, pressure, response sums, heat capacities
//!   and thermodynamic coefficients of a solved state;
//! * [`size_effects`] - onset/instability temperatures, analytic jump and
//!   slope formulas, critical particle numbers;
//! * [`continual`] - the large-volume description: continual occupation
//!   equation, response quadratures and Stoner-function thermodynamics.
//!
//! All quantities are dimensionless: lengths in units of a reference scale
//! `a*`, energies in `eps* = (hbar^2/2m)(2 pi/a*)^2`, temperatures in `eps*`
//! (k_B = 1), pressures in `p* = 2 pi^{3/2} eps*/a*^3`. In these units the
//! energy of a level is `gamma^2 / L^2` where `L` is the dimensionless box
//! side.

pub mod continual;
pub mod error;
pub mod occupancy;
mod quad;
pub mod size_effects;
pub mod special;
pub mod spectrum;
pub mod thermo;

pub use error::Error;
pub use occupancy::OccupancyState;
pub use special::{StonerIndex, StonerPath, StonerSet};
pub use spectrum::{Level, Spectrum};
pub use thermo::ThermoPoint;

/// Pressure scale `p* = 2 pi^{3/2}` in `eps*/a*^3` units.
pub const PRESSURE_SCALE: f64 = 11.139842907722384; // 2 * pi^{3/2}

/// One-line description of the unit system, embedded in machine-readable
/// outputs so downstream consumers never have to guess the normalization.
pub const UNITS_NOTE: &str = "dimensionless: length/a*, energy/eps*, temperature/eps* (kB=1), \
     pressure/(2 pi^{3/2} eps*/a*^3); B_V in eps*/a*^3, A_V in eps*^2/a*^6";

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
