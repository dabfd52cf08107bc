//! State functions and response coefficients of a solved occupancy state.
//!
//! Everything is assembled from four level sums (`g2`, `g4`, `1/theta^(1)`,
//! `d`) in closed form; numerical differentiation never enters, because the
//! onset discontinuities would poison it. The response sums run over
//! *partially filled* levels only: a level pinned at occupation 0 or 1 does
//! not respond to an infinitesimal change of temperature, volume or chemical
//! potential, while the weighted sum `d` (and with it energy and pressure)
//! counts every level.
//!
//! Below the excitation onset the populations are the zero-temperature ones;
//! such points report `C_V = C_p = 0`, `alpha_p = beta_V = 0` and
//! `gamma_T = 3/(5 p)` exactly, with the `frozen` flag set. An excited
//! solution with `A_V >= 0` is thermodynamically unstable (the gas cannot
//! satisfy `(dp/dV)_T < 0`), and the equilibrium pipeline falls back to the
//! frozen configuration in that case as well.

use crate::error::Error;
use crate::occupancy::{self, OccupancyState};
use crate::special::log_gamma_raw;
use crate::spectrum::Spectrum;
use crate::{Result, PRESSURE_SCALE};
use serde::{Deserialize, Serialize};

/// The level sums behind every response coefficient.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ResponseSums {
    /// `sum gamma^2 / theta^(1)` over partially filled levels.
    pub g2: f64,
    /// `sum gamma^4 / theta^(1)` over partially filled levels.
    pub g4: f64,
    /// `sum 1 / theta^(1)` over partially filled levels.
    pub inv_theta1: f64,
    /// `sum gamma^2 z n` over all levels (energy-weighted population).
    pub d: f64,
    /// `G = g4 - g2^2 / inv_theta1`; nonnegative by Cauchy-Schwarz,
    /// zero when at most one level responds.
    pub big_g: f64,
    /// `B_T = G / (tau^2 L^4)`, the isochoric heat capacity.
    pub b_t: f64,
    /// `B_V = A_T = 2 G / (3 tau L^7)` in `eps*/a*^3` units.
    pub b_v: f64,
    /// `A_V = -(4 / 9 L^8) (5 tau d / 2 - G / L^2)` in `eps*^2/a*^6` units.
    pub a_v: f64,
}

/// Full set of state functions and response coefficients at one
/// `(tau, N, L)` point. See [`crate::UNITS_NOTE`] for the normalization.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ThermoPoint {
    pub tau: f64,
    /// Reduced chemical potential `mu / T`.
    pub t: f64,
    pub particle_number: f64,
    pub box_size: f64,
    /// Entropy, natural-log units (k_B = 1).
    pub entropy: f64,
    /// Energy in `eps*`.
    pub energy: f64,
    /// Pressure in `p* = 2 pi^{3/2} eps*/a*^3`.
    pub pressure: f64,
    /// Grand potential `E - T S - mu N` in `eps*`.
    pub grand_potential: f64,
    pub b_t: f64,
    pub b_v: f64,
    pub a_v: f64,
    /// Isochoric heat capacity (k_B = 1).
    pub c_v: f64,
    /// Isobaric heat capacity (k_B = 1).
    pub c_p: f64,
    /// Volumetric expansion coefficient in `1/eps*`.
    pub alpha_p: f64,
    /// Isothermal compressibility in `1/p*`.
    pub gamma_t: f64,
    /// Isochoric thermal pressure coefficient in `1/eps*`.
    pub beta_v: f64,
    /// `B_T > 0` and `A_V < 0`.
    pub stable: bool,
    /// Populations are the zero-temperature configuration.
    pub frozen: bool,
}

/// Combinatorial entropy `sum_j [ln G(z+1) - ln G(zn+1) - ln G(z(1-n)+1)]`.
/// Full and empty levels contribute exactly zero.
pub fn entropy(state: &OccupancyState) -> f64 {
    state
        .populations
        .iter()
        .zip(state.spectrum.levels.iter())
        .filter(|(n, _)| **n > 0.0 && **n < 1.0)
        .map(|(&n, level)| {
            let z = level.degeneracy as f64;
            log_gamma_raw(z + 1.0) - log_gamma_raw(z * n + 1.0) - log_gamma_raw(z * (1.0 - n) + 1.0)
        })
        .sum()
}

/// Energy `E = sum eps_j z_j n_j` (in `eps*`) and pressure in `p*` units,
/// the latter from the weighted sum `d`: `p/p* = d / (3 pi^{3/2} L^5)`.
pub fn energy_pressure(state: &OccupancyState) -> (f64, f64) {
    let energy: f64 = state
        .populations
        .iter()
        .zip(state.spectrum.levels.iter())
        .map(|(&n, level)| level.energy * level.degeneracy as f64 * n)
        .sum();
    let l = state.spectrum.box_size;
    let d = weighted_sum(state);
    let pressure = d / (3.0 * std::f64::consts::PI.powf(1.5) * l.powi(5));
    (energy, pressure)
}

fn weighted_sum(state: &OccupancyState) -> f64 {
    state
        .populations
        .iter()
        .zip(state.spectrum.levels.iter())
        .map(|(&n, level)| level.gamma_sq as f64 * level.degeneracy as f64 * n)
        .sum()
}

/// Evaluate the response sums of a state with `tau > 0`.
pub fn response_sums(state: &OccupancyState) -> Result<ResponseSums> {
    if !(state.tau > 0.0) {
        return Err(Error::domain("response_sums", "state must have tau > 0"));
    }
    let mut g2 = 0.0;
    let mut g4 = 0.0;
    let mut inv_theta1 = 0.0;
    for (&n, level) in state.populations.iter().zip(state.spectrum.levels.iter()) {
        if n <= 0.0 || n >= 1.0 {
            continue;
        }
        let z = level.degeneracy as f64;
        let gamma_sq = level.gamma_sq as f64;
        let theta1 = occupancy::theta1_raw(n, z);
        g2 += gamma_sq / theta1;
        g4 += gamma_sq * gamma_sq / theta1;
        inv_theta1 += 1.0 / theta1;
    }
    let d = weighted_sum(state);
    let big_g = if inv_theta1 > 0.0 { g4 - g2 * g2 / inv_theta1 } else { 0.0 };
    let tau = state.tau;
    let l = state.spectrum.box_size;
    let l2 = l * l;
    let b_t = big_g / (tau * tau * l2 * l2);
    let b_v = 2.0 * big_g / (3.0 * tau * l.powi(7));
    let a_v = -(4.0 / (9.0 * l.powi(8))) * (2.5 * tau * d - big_g / l2);
    Ok(ResponseSums { g2, g4, inv_theta1, d, big_g, b_t, b_v, a_v })
}

/// Assemble the full thermodynamic point of a solved state, no stability
/// policy applied: an unstable excited state is reported as-is with
/// `stable = false`.
pub fn point_from_state(state: &OccupancyState) -> Result<ThermoPoint> {
    let sums = response_sums(state)?;
    let (energy, pressure) = energy_pressure(state);
    let s = entropy(state);
    let tau = state.tau;
    let l = state.spectrum.box_size;
    let volume = l * l * l;
    let mu = state.t * tau;
    let frozen = state.is_ground_configuration();
    if frozen {
        return Ok(frozen_point(state, s, energy, pressure, sums));
    }
    let c_v = sums.b_t;
    let c_p = c_v - sums.b_v * sums.b_v / sums.a_v;
    let alpha_p = -sums.b_v / (volume * sums.a_v);
    let gamma_t = -tau / (volume * sums.a_v) * PRESSURE_SCALE;
    let p_raw = pressure * PRESSURE_SCALE;
    let beta_v = sums.b_v / (p_raw * tau);
    Ok(ThermoPoint {
        tau,
        t: state.t,
        particle_number: state.particle_number,
        box_size: l,
        entropy: s,
        energy,
        pressure,
        grand_potential: energy - tau * s - mu * state.particle_number,
        b_t: sums.b_t,
        b_v: sums.b_v,
        a_v: sums.a_v,
        c_v,
        c_p,
        alpha_p,
        gamma_t,
        beta_v,
        stable: sums.b_t > 0.0 && sums.a_v < 0.0,
        frozen: false,
    })
}

fn frozen_point(
    state: &OccupancyState,
    entropy: f64,
    energy: f64,
    pressure: f64,
    sums: ResponseSums,
) -> ThermoPoint {
    let tau = state.tau;
    let mu = if tau > 0.0 { state.t * tau } else { state.chemical_potential() };
    ThermoPoint {
        tau,
        t: state.t,
        particle_number: state.particle_number,
        box_size: state.spectrum.box_size,
        entropy,
        energy,
        pressure,
        grand_potential: energy - tau * entropy - mu * state.particle_number,
        b_t: 0.0,
        b_v: 0.0,
        a_v: sums.a_v,
        c_v: 0.0,
        c_p: 0.0,
        alpha_p: 0.0,
        gamma_t: 0.6 / pressure,
        beta_v: 0.0,
        stable: false,
        frozen: true,
    }
}

/// Thermodynamic point of the frozen (zero-temperature) configuration at
/// temperature `tau >= 0`.
pub fn frozen_equilibrium_point(
    spectrum: &Spectrum,
    tau: f64,
    particle_number: f64,
) -> Result<ThermoPoint> {
    let state = if tau > 0.0 {
        occupancy::frozen_state(spectrum, tau, particle_number)?
    } else {
        occupancy::ground_state(spectrum, particle_number)?
    };
    let (energy, pressure) = energy_pressure(&state);
    let s = entropy(&state);
    let d = weighted_sum(&state);
    let l = spectrum.box_size;
    let a_v = -(4.0 / (9.0 * l.powi(8))) * 2.5 * tau * d;
    let sums = ResponseSums {
        g2: 0.0,
        g4: 0.0,
        inv_theta1: 0.0,
        d,
        big_g: 0.0,
        b_t: 0.0,
        b_v: 0.0,
        a_v,
    };
    Ok(frozen_point(&state, s, energy, pressure, sums))
}

/// The state the gas actually assumes at `(tau, N)` on this spectrum:
/// the entropy-stationary solution when it is stable, the frozen
/// zero-temperature configuration otherwise.
pub fn equilibrium_point(
    spectrum: &Spectrum,
    tau: f64,
    particle_number: f64,
) -> Result<ThermoPoint> {
    if tau == 0.0 {
        return frozen_equilibrium_point(spectrum, tau, particle_number);
    }
    let state = occupancy::solve_chemical_potential(spectrum, tau, particle_number)?;
    let point = point_from_state(&state)?;
    if point.frozen || point.a_v < 0.0 {
        return Ok(point);
    }
    // Excited but unstable: the system stays in its ground configuration.
    frozen_equilibrium_point(spectrum, tau, particle_number)
}
