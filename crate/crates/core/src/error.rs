//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// `Domain`-class errors mean the caller handed in arguments outside an
/// operation's contract; the remaining variants signal that an internal
/// iteration could not finish (bracket never closed, quadrature stalled,
/// spectrum too small to hold the requested particle number).
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument violates an operation's precondition.
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// Polygamma order outside {0, 1, 2}.
    #[error("invalid polygamma order {0} (supported: 0, 1, 2)")]
    InvalidOrder(u32),

    /// Stoner index outside {1/2, 3/2, 5/2}.
    #[error("unsupported Stoner index {0} (supported: 1/2, 3/2, 5/2)")]
    UnsupportedIndex(f64),

    /// The chemical-potential bracket could not enclose the target particle
    /// number on the given spectrum.
    #[error("bracket failure: spectrum with capacity {capacity} cannot hold N = {particle_number}")]
    BracketExhausted { particle_number: f64, capacity: f64 },

    /// Requested level index outside the enumerated spectrum.
    #[error("level index {index} out of range (spectrum has {len} levels)")]
    OutOfRange { index: usize, len: usize },

    /// Adaptive quadrature did not reach its target after the subdivision cap.
    #[error("quadrature stalled: error estimate {estimate:e} above target {target:e}")]
    QuadratureStalled { estimate: f64, target: f64 },

    /// Excited configurations violate stability for all temperatures at this
    /// particle number; the system never leaves its ground state.
    #[error("system is permanently frozen: N = {particle_number} is below N_m = {n_m}")]
    PermanentlyFrozen { particle_number: f64, n_m: f64 },

    /// A root-finding problem has no solution in the admissible range.
    #[error("no solution in {op}: {msg}")]
    NoSolution { op: &'static str, msg: String },
}

impl Error {
    pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { op, msg: msg.into() }
    }

    /// Short machine-readable name, used by the CLI on stderr.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::InvalidOrder(_) => "invalid-order",
            Error::UnsupportedIndex(_) => "unsupported-index",
            Error::BracketExhausted { .. } => "bracket-failure",
            Error::OutOfRange { .. } => "out-of-range",
            Error::QuadratureStalled { .. } => "quadrature-failure",
            Error::PermanentlyFrozen { .. } => "permanently-frozen",
            Error::NoSolution { .. } => "no-solution",
        }
    }
}
