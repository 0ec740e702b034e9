use serde::{Deserialize, Serialize};

use super::horizon::{existence_horizon, Horizon};
use crate::kernel::{ModelParams, SchemeConfig};

/// Axes of a horizon sweep; every combination is evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HorizonGrid {
    pub a_star_hi: Vec<f64>,
    pub a_star_lo: Vec<f64>,
    pub m02: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HorizonRow {
    pub a_star_hi: f64,
    pub a_star_lo: f64,
    pub m02: f64,
    /// `None` where the horizon preconditions fail.
    pub horizon: Option<Horizon>,
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// Rows ordered by `m02`, then `a_star_lo`, then `a_star_hi`.
pub fn sweep_horizon(params: &ModelParams, config: &SchemeConfig, grid: &HorizonGrid) -> Vec<HorizonRow> {
    let mut rows = Vec::with_capacity(grid.a_star_hi.len() * grid.a_star_lo.len() * grid.m02.len());
    for &m02 in &grid.m02 {
        for &a_star_lo in &grid.a_star_lo {
            for &a_star_hi in &grid.a_star_hi {
                let cfg = SchemeConfig {
                    a_star_hi,
                    a_star_lo,
                    m02,
                    ..*config
                };
                rows.push(HorizonRow {
                    a_star_hi,
                    a_star_lo,
                    m02,
                    horizon: existence_horizon(params, &cfg).ok(),
                });
            }
        }
    }
    rows
}

/// Row with the largest `T_star` among those matching `a_star_lo` and
/// `m02`; ties go to the first row.
pub fn best_over_a_hi(rows: &[HorizonRow], a_star_lo: f64, m02: f64) -> Option<HorizonRow> {
    let mut best: Option<HorizonRow> = None;
    for row in rows.iter().filter(|r| r.a_star_lo == a_star_lo && r.m02 == m02) {
        let Some(h) = row.horizon else { continue };
        if best.is_none_or(|b| h.t_star > b.horizon.unwrap().t_star) {
            best = Some(*row);
        }
    }
    best
}
