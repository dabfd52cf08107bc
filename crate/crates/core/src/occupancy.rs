//! The finite-degeneracy occupation equation and the chemical-potential
//! constraint.
//!
//! For a level with degeneracy `z`, the equilibrium occupation `n` solves
//!
//! ```text
//! theta(n, z) = psi(z (1 - n) + 1) - psi(z n + 1) = (eps - mu) / T
//! ```
//!
//! `theta` maps (0, 1) onto the finite interval `(-theta(0,z), theta(0,z))`,
//! so the occupation reaches 0 and 1 at *finite* energy offsets - there are
//! no exponential tails, unlike the Fermi-Dirac limit `z -> inf`. That makes
//! level-sum truncation exact: a level strictly beyond the support window
//! holds exactly zero (or exactly its full) population.

use crate::error::Error;
use crate::special::{digamma_raw, tetragamma_raw, trigamma_raw};
use crate::spectrum::Spectrum;
use crate::Result;
use serde::{Deserialize, Serialize};

fn check_occupation_args(op: &'static str, n: f64, z: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&n) || n.is_nan() {
        return Err(Error::domain(op, format!("occupation must lie in [0, 1], got {n}")));
    }
    if !(z >= 1.0) || !z.is_finite() {
        return Err(Error::domain(op, format!("degeneracy must be >= 1, got {z}")));
    }
    Ok(())
}

/// `theta(n, z) = psi(z(1-n)+1) - psi(zn+1)`; strictly decreasing in `n`,
/// antisymmetric about `n = 1/2`.
pub fn theta(n: f64, z: f64) -> Result<f64> {
    check_occupation_args("theta", n, z)?;
    Ok(theta_raw(n, z))
}

/// `theta^(1)(n, z) = psi^(1)(z(1-n)+1) + psi^(1)(zn+1)`; always positive.
pub fn theta1(n: f64, z: f64) -> Result<f64> {
    check_occupation_args("theta1", n, z)?;
    Ok(theta1_raw(n, z))
}

/// `theta^(2)(n, z) = psi^(2)(z(1-n)+1) - psi^(2)(zn+1)`; antisymmetric
/// about `n = 1/2`.
pub fn theta2(n: f64, z: f64) -> Result<f64> {
    check_occupation_args("theta2", n, z)?;
    Ok(theta2_raw(n, z))
}

#[inline]
pub(crate) fn theta_raw(n: f64, z: f64) -> f64 {
    digamma_raw(z * (1.0 - n) + 1.0) - digamma_raw(z * n + 1.0)
}

#[inline]
pub(crate) fn theta1_raw(n: f64, z: f64) -> f64 {
    trigamma_raw(z * (1.0 - n) + 1.0) + trigamma_raw(z * n + 1.0)
}

#[inline]
pub(crate) fn theta2_raw(n: f64, z: f64) -> f64 {
    tetragamma_raw(z * (1.0 - n) + 1.0) - tetragamma_raw(z * n + 1.0)
}

/// Half-width of the support window: `theta(0, z) = psi(z+1) - psi(1)`.
pub fn support_half_width(z: f64) -> f64 {
    digamma_raw(z + 1.0) - digamma_raw(1.0)
}

/// Solve `theta(n, z) = x` for the occupation.
///
/// Returns exactly 1 for `x <= -theta(0,z)` and exactly 0 for
/// `x >= theta(0,z)`; in between, bisection (theta is strictly decreasing)
/// refined by two Newton steps with slope `-z theta^(1)`.
pub fn solve_population(z: f64, x: f64) -> f64 {
    let half_width = support_half_width(z);
    if x >= half_width {
        return 0.0;
    }
    if x <= -half_width {
        return 1.0;
    }
    if x == 0.0 {
        return 0.5;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..52 {
        let mid = 0.5 * (lo + hi);
        if theta_raw(mid, z) > x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut n = 0.5 * (lo + hi);
    for _ in 0..2 {
        let residual = theta_raw(n, z) - x;
        let slope = -z * theta1_raw(n, z);
        let next = n - residual / slope;
        if next > 0.0 && next < 1.0 {
            n = next;
        }
    }
    n
}

/// Fermi-Dirac occupation with the leading finite-degeneracy correction,
/// `n = n0 - (1 - 2 n0) / (2z)`, clamped to [0, 1].
pub fn approx_population(z: f64, x: f64) -> f64 {
    let n0 = 1.0 / (x.exp() + 1.0);
    (n0 - (1.0 - 2.0 * n0) / (2.0 * z)).clamp(0.0, 1.0)
}

/// Solved populations plus the reduced chemical potential at one temperature.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OccupancyState {
    /// Dimensionless temperature `tau = T / eps*` (0 for a ground state).
    pub tau: f64,
    /// Reduced chemical potential `t = mu / T` (infinite at `tau = 0`).
    pub t: f64,
    /// Per-level fractional occupations, aligned with `spectrum.levels`.
    pub populations: Vec<f64>,
    /// Time-averaged particle number (any positive real).
    pub particle_number: f64,
    /// The level list this state was solved on.
    pub spectrum: Spectrum,
}

impl OccupancyState {
    /// Chemical potential `mu` in `eps*` units. At `tau = 0` this is the
    /// energy of the topmost touched level.
    pub fn chemical_potential(&self) -> f64 {
        if self.tau == 0.0 {
            let m = self.top_touched_level();
            self.spectrum.levels[m].energy
        } else {
            self.t * self.tau
        }
    }

    /// Index (0-based) of the highest level with nonzero population.
    pub fn top_touched_level(&self) -> usize {
        self.populations
            .iter()
            .rposition(|&n| n > 0.0)
            .unwrap_or(0)
    }

    /// True when the populations coincide with the zero-temperature fill.
    pub fn is_ground_configuration(&self) -> bool {
        let Ok(ground) = ground_state(&self.spectrum, self.particle_number) else {
            return false;
        };
        self.populations
            .iter()
            .zip(ground.populations.iter())
            .all(|(a, b)| (a - b).abs() <= 1e-12)
    }

    fn total_population(&self) -> f64 {
        self.populations
            .iter()
            .zip(self.spectrum.levels.iter())
            .map(|(n, l)| n * l.degeneracy as f64)
            .sum()
    }
}

fn population_sum(spectrum: &Spectrum, tau: f64, t: f64) -> f64 {
    let mut sum = 0.0;
    for level in &spectrum.levels {
        let x = level.energy / tau - t;
        sum += level.degeneracy as f64 * solve_population(level.degeneracy as f64, x);
    }
    sum
}

/// Find `t = mu/T` such that `sum_j z_j n_j(t) = N` on the given spectrum.
///
/// The total population is nondecreasing in `t`, so the root is isolated by
/// a predicate bisection that lands on the infimum of any degenerate
/// plateau; with every level saturated that convention sends `mu` to the
/// energy of the topmost filled level as `tau -> 0`.
pub fn solve_chemical_potential(
    spectrum: &Spectrum,
    tau: f64,
    particle_number: f64,
) -> Result<OccupancyState> {
    if !(particle_number > 0.0) || !particle_number.is_finite() {
        return Err(Error::domain(
            "solve_chemical_potential",
            format!("particle number must be positive, got {particle_number}"),
        ));
    }
    if tau == 0.0 {
        return ground_state(spectrum, particle_number);
    }
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::domain(
            "solve_chemical_potential",
            format!("temperature must be nonnegative and finite, got {tau}"),
        ));
    }
    let capacity = spectrum.capacity() as f64;
    if particle_number > capacity {
        return Err(Error::BracketExhausted { particle_number, capacity });
    }

    // Bracket around the zero-temperature Fermi level of the topmost
    // partially filled level, expanding geometrically.
    let ground = ground_state(spectrum, particle_number)?;
    let fermi_level = spectrum.levels[ground.top_touched_level()].energy;
    let z_max = spectrum.levels.iter().map(|l| l.degeneracy).max().unwrap_or(16) as f64;
    let mut step = support_half_width(z_max).max(1.0);
    let center = fermi_level / tau;
    let (mut lo, mut hi) = (center - step, center + step);
    let mut guard = 0;
    while population_sum(spectrum, tau, lo) >= particle_number {
        lo -= step;
        step *= 2.0;
        guard += 1;
        if guard > 200 {
            return Err(Error::BracketExhausted { particle_number, capacity });
        }
    }
    step = support_half_width(z_max).max(1.0);
    guard = 0;
    while population_sum(spectrum, tau, hi) < particle_number {
        hi += step;
        step *= 2.0;
        guard += 1;
        if guard > 200 {
            return Err(Error::BracketExhausted { particle_number, capacity });
        }
    }

    // Predicate bisection: keep sum(lo) < N <= sum(hi); answer is hi.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if population_sum(spectrum, tau, mid) < particle_number {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = hi;
    let populations: Vec<f64> = spectrum
        .levels
        .iter()
        .map(|l| solve_population(l.degeneracy as f64, l.energy / tau - t))
        .collect();
    let state = OccupancyState {
        tau,
        t,
        populations,
        particle_number,
        spectrum: spectrum.clone(),
    };
    debug_assert!(
        (state.total_population() - particle_number).abs()
            <= 1e-9 * particle_number.max(1.0)
    );
    Ok(state)
}

/// Solve on an adaptively sized spectrum: levels are appended until three
/// consecutive levels sit strictly beyond their support windows at the
/// solved chemical potential, which makes the truncation exact.
pub fn solve_adaptive(tau: f64, particle_number: f64, box_size: f64) -> Result<OccupancyState> {
    if !(box_size > 0.0) {
        return Err(Error::domain(
            "solve_adaptive",
            format!("box size must be positive, got {box_size}"),
        ));
    }
    // Initial guess: enough capacity for N at tau = 0 plus thermal headroom.
    let mut gamma_sq_max = 24u64;
    for _ in 0..24 {
        let spectrum = Spectrum::new(gamma_sq_max, box_size)?;
        if (spectrum.capacity() as f64) < particle_number {
            gamma_sq_max *= 2;
            continue;
        }
        let state = solve_chemical_potential(&spectrum, tau, particle_number)?;
        if tau == 0.0 {
            return Ok(state);
        }
        let beyond = |level: &crate::spectrum::Level| {
            let x = level.energy / tau - state.t;
            x >= support_half_width(level.degeneracy as f64)
        };
        let trailing = spectrum.levels.iter().rev().take(3).filter(|l| beyond(l)).count();
        if spectrum.levels.len() >= 3 && trailing == 3 {
            return Ok(state);
        }
        gamma_sq_max *= 2;
    }
    Err(Error::NoSolution {
        op: "solve_adaptive",
        msg: "level cutoff did not stabilize".into(),
    })
}

/// Zero-temperature fill: lowest levels saturate in energy order, the
/// topmost touched level `M` holds the remainder, `mu = eps_M`.
pub fn ground_state(spectrum: &Spectrum, particle_number: f64) -> Result<OccupancyState> {
    if !(particle_number > 0.0) || !particle_number.is_finite() {
        return Err(Error::domain(
            "ground_state",
            format!("particle number must be positive, got {particle_number}"),
        ));
    }
    let capacity = spectrum.capacity() as f64;
    if particle_number > capacity {
        return Err(Error::BracketExhausted { particle_number, capacity });
    }
    let mut remaining = particle_number;
    let mut populations = Vec::with_capacity(spectrum.levels.len());
    for level in &spectrum.levels {
        let z = level.degeneracy as f64;
        let take = remaining.min(z);
        populations.push(take / z);
        remaining -= take;
    }
    Ok(OccupancyState {
        tau: 0.0,
        t: f64::INFINITY,
        populations,
        particle_number,
        spectrum: spectrum.clone(),
    })
}

/// Ground-state populations reported at a finite temperature, with the
/// reduced chemical potential consistent with the topmost touched level.
///
/// This is the state the system actually occupies below its excitation
/// onset, and the state it falls back to when all excited configurations
/// are thermodynamically unstable. It is *not* the entropy-stationary
/// solution in the latter case.
pub fn frozen_state(spectrum: &Spectrum, tau: f64, particle_number: f64) -> Result<OccupancyState> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::domain(
            "frozen_state",
            format!("temperature must be positive, got {tau}"),
        ));
    }
    let ground = ground_state(spectrum, particle_number)?;
    let m = ground.top_touched_level();
    let level = &spectrum.levels[m];
    let z = level.degeneracy as f64;
    let n_top = ground.populations[m];
    let t = if n_top < 1.0 {
        level.energy / tau - theta_raw(n_top, z)
    } else {
        level.energy / tau + support_half_width(z)
    };
    Ok(OccupancyState {
        tau,
        t,
        populations: ground.populations,
        particle_number,
        spectrum: spectrum.clone(),
    })
}
