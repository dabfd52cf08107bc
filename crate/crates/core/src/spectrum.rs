//! Discrete single-particle spectrum of the cubic cavity.
//!
//! A level is labelled by the integer `gamma^2 = n_x^2 + n_y^2 + n_z^2` with
//! all three quantum numbers nonzero (`n_a = +-1, +-2, ...`); sign choices
//! count as distinct states and the spin projection contributes a factor 2,
//! so every degeneracy is a multiple of 16. Level energies are
//! `gamma^2 / L^2` for a dimensionless box side `L`.

use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};

/// One discrete energy shell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    /// Ordinal position (1-based, ascending energy).
    pub index: usize,
    /// `n_x^2 + n_y^2 + n_z^2` with all coordinates nonzero.
    pub gamma_sq: u64,
    /// Number of states sharing the shell, sign choices and spin included.
    pub degeneracy: u64,
    /// `gamma^2 / L^2`; equals `gamma_sq` until bound to a box.
    pub energy: f64,
}

/// Ordered level list bound to a box size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Dimensionless box side.
    pub box_size: f64,
    /// Levels in strictly increasing `gamma_sq` order.
    pub levels: Vec<Level>,
}

/// Every realizable `gamma^2 <= gamma_sq_max`, ascending, with exact
/// degeneracy counts.
///
/// Multiplicities come from a direct loop over ordered triples
/// `1 <= n_x <= n_y <= n_z`: 6/3/1 permutations for distinct/paired/equal
/// coordinates, times 8 sign choices, times 2 spin projections.
pub fn enumerate_levels(gamma_sq_max: u64) -> Result<Vec<Level>> {
    if gamma_sq_max < 3 {
        return Err(Error::domain(
            "enumerate_levels",
            format!("gamma_sq_max must be >= 3 (lowest shell), got {gamma_sq_max}"),
        ));
    }
    let top = (gamma_sq_max as f64).sqrt() as u64 + 1;
    let mut counts = std::collections::BTreeMap::new();
    for nx in 1..=top {
        let gx = nx * nx;
        if gx + 2 > gamma_sq_max {
            break;
        }
        for ny in nx..=top {
            let gxy = gx + ny * ny;
            if gxy + ny * ny > gamma_sq_max {
                break;
            }
            for nz in ny..=top {
                let g = gxy + nz * nz;
                if g > gamma_sq_max {
                    break;
                }
                let permutations = if nx == ny && ny == nz {
                    1
                } else if nx == ny || ny == nz {
                    3
                } else {
                    6
                };
                *counts.entry(g).or_insert(0u64) += permutations * 8 * 2;
            }
        }
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(i, (gamma_sq, degeneracy))| Level {
            index: i + 1,
            gamma_sq,
            degeneracy,
            energy: gamma_sq as f64,
        })
        .collect())
}

/// Bind a level list to a box size, populating energies `gamma^2 / L^2`.
pub fn bind_spectrum(levels: Vec<Level>, box_size: f64) -> Result<Spectrum> {
    if !(box_size > 0.0) || !box_size.is_finite() {
        return Err(Error::domain(
            "bind_spectrum",
            format!("box_size must be positive and finite, got {box_size}"),
        ));
    }
    let inv_l2 = 1.0 / (box_size * box_size);
    let levels = levels
        .into_iter()
        .enumerate()
        .map(|(i, mut level)| {
            level.index = i + 1;
            level.energy = level.gamma_sq as f64 * inv_l2;
            level
        })
        .collect();
    Ok(Spectrum { box_size, levels })
}

impl Spectrum {
    /// Enumerate and bind in one step.
    pub fn new(gamma_sq_max: u64, box_size: f64) -> Result<Self> {
        bind_spectrum(enumerate_levels(gamma_sq_max)?, box_size)
    }

    /// Keep only the lowest `count` levels.
    pub fn truncated(&self, count: usize) -> Result<Self> {
        if count > self.levels.len() {
            return Err(Error::OutOfRange { index: count, len: self.levels.len() });
        }
        Ok(Spectrum {
            box_size: self.box_size,
            levels: self.levels[..count].to_vec(),
        })
    }

    /// Maximum particle count the bottom `level_count` levels can hold,
    /// `sum_{j<=M} z_j`.
    pub fn cumulative_capacity(&self, level_count: usize) -> Result<u64> {
        if level_count > self.levels.len() {
            return Err(Error::OutOfRange { index: level_count, len: self.levels.len() });
        }
        Ok(self.levels[..level_count].iter().map(|l| l.degeneracy).sum())
    }

    /// Total capacity of all enumerated levels.
    pub fn capacity(&self) -> u64 {
        self.levels.iter().map(|l| l.degeneracy).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: count all sign-carrying triples directly.
    fn brute_force_degeneracy(gamma_sq: u64, reach: i64) -> u64 {
        let mut count = 0u64;
        for nx in -reach..=reach {
            for ny in -reach..=reach {
                for nz in -reach..=reach {
                    if nx != 0 && ny != 0 && nz != 0 {
                        let g = (nx * nx + ny * ny + nz * nz) as u64;
                        if g == gamma_sq {
                            count += 1;
                        }
                    }
                }
            }
        }
        2 * count
    }

    #[test]
    fn bottom_ten_shells() {
        let levels = enumerate_levels(21).unwrap();
        let table: Vec<(u64, u64)> = levels.iter().map(|l| (l.gamma_sq, l.degeneracy)).collect();
        assert_eq!(
            table,
            vec![
                (3, 16),
                (6, 48),
                (9, 48),
                (11, 48),
                (12, 16),
                (14, 96),
                (17, 48),
                (18, 48),
                (19, 48),
                (21, 96)
            ]
        );
    }

    #[test]
    fn unrealizable_shells_are_absent() {
        let levels = enumerate_levels(21).unwrap();
        for missing in [1u64, 2, 4, 5, 7, 8, 10, 13, 15, 16, 20] {
            assert!(
                levels.iter().all(|l| l.gamma_sq != missing),
                "gamma^2 = {missing} has no all-nonzero representation"
            );
            assert_eq!(brute_force_degeneracy(missing, 5), 0);
        }
    }

    #[test]
    fn degeneracies_match_brute_force_up_to_200() {
        let levels = enumerate_levels(200).unwrap();
        for level in &levels {
            assert_eq!(
                level.degeneracy,
                brute_force_degeneracy(level.gamma_sq, 15),
                "gamma^2 = {}",
                level.gamma_sq
            );
            assert_eq!(level.degeneracy % 16, 0);
        }
    }

    #[test]
    fn binding_scales_energies() {
        let levels = enumerate_levels(21).unwrap();
        let s = bind_spectrum(levels.clone(), 1.0).unwrap();
        assert_eq!(s.levels[0].energy, 3.0);
        assert_eq!(s.levels[1].energy, 6.0);
        assert_eq!(s.levels[9].energy, 21.0);
        let s2 = bind_spectrum(levels.clone(), 2.0).unwrap();
        assert_eq!(s2.levels[0].energy, 0.75);
        let s10 = bind_spectrum(levels, 10.0).unwrap();
        assert!((s10.levels[3].energy - 0.11).abs() < 1e-15);
        for w in s10.levels.windows(2) {
            assert!(w[0].energy < w[1].energy);
        }
    }

    #[test]
    fn binding_rejects_bad_box() {
        assert!(bind_spectrum(enumerate_levels(3).unwrap(), 0.0).is_err());
        assert!(bind_spectrum(enumerate_levels(3).unwrap(), -1.0).is_err());
    }

    #[test]
    fn cumulative_capacity_prefix_sums() {
        let s = Spectrum::new(21, 1.0).unwrap();
        assert_eq!(s.cumulative_capacity(0).unwrap(), 0);
        assert_eq!(s.cumulative_capacity(1).unwrap(), 16);
        assert_eq!(s.cumulative_capacity(2).unwrap(), 64);
        assert!(s.cumulative_capacity(11).is_err());
    }

    #[test]
    fn shell_counts_approach_sphere_volume() {
        // cumulative state count (per spin) approaches (4 pi / 3) Gamma^3,
        // and shell-binned degeneracies average toward 8 pi gamma^2
        let levels = enumerate_levels(400).unwrap();
        for big_gamma in [12.0f64, 15.0, 18.0] {
            let states: u64 = levels
                .iter()
                .filter(|l| (l.gamma_sq as f64) <= big_gamma * big_gamma)
                .map(|l| l.degeneracy / 2)
                .sum();
            let sphere = 4.0 * std::f64::consts::PI / 3.0 * big_gamma.powi(3);
            assert!(
                ((states as f64 - sphere) / sphere).abs() < 0.10,
                "Gamma = {big_gamma}: {states} vs {sphere}"
            );
        }
        // binned mean of z over gamma in [10, 14) vs 8 pi gamma^2 at bin center
        let (mut z_sum, mut count) = (0.0, 0.0);
        for l in levels.iter().filter(|l| l.gamma_sq >= 100 && l.gamma_sq < 196) {
            z_sum += l.degeneracy as f64;
            count += 1.0;
        }
        // per unit gamma there are ~ 2 gamma rho levels, so compare totals:
        // sum of z over the bin vs Int 8 pi gamma^2 dgamma over [10, 14)
        let integral = 8.0 * std::f64::consts::PI / 3.0 * (14.0f64.powi(3) - 10.0f64.powi(3));
        assert!(count > 0.0);
        assert!(((z_sum - integral) / integral).abs() < 0.10, "{z_sum} vs {integral}");
    }
}
