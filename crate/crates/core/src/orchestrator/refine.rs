use serde::{Deserialize, Serialize};

use super::run::{run, RunOptions, Trajectory};
use crate::error::Result;
use crate::kernel::{ModelParams, SchemeConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    pub h: f64,
    pub delta: f64,
    pub steps: usize,
    pub final_radius: f64,
    pub alpha_space_bv: f64,
    pub temporal_bv: f64,
    pub max_mass_residual: f64,
    pub radius_decomposition_passed: bool,
}

/// Runs at `(h, delta)`, `(h/2, delta/2)`, ... and compares consecutive
/// levels at the final time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefinementReport {
    pub levels: Vec<LevelReport>,
    /// L1 distance of `alpha` between level `i` and `i + 1`.
    pub l1_differences: Vec<f64>,
    /// `l1_differences[i + 1] / l1_differences[i]`.
    pub difference_ratios: Vec<f64>,
}

/// L1 distance between a coarse cell field and one on the mesh refined by
/// `factor`.
pub fn l1_distance(coarse: &[f64], fine: &[f64], h_fine: f64, factor: usize) -> f64 {
    fine.iter()
        .enumerate()
        .map(|(j, &f)| (coarse[j / factor] - f).abs())
        .sum::<f64>()
        * h_fine
}

pub fn refine(
    params: &ModelParams,
    config: &SchemeConfig,
    alpha0: impl Fn(f64) -> f64 + Copy,
    c0: impl Fn(f64) -> f64 + Copy,
    levels: usize,
    options: RunOptions,
) -> Result<RefinementReport> {
    let mut runs: Vec<Trajectory> = Vec::with_capacity(levels);
    let mut cfg = *config;
    for _ in 0..levels {
        runs.push(run(params, &cfg, alpha0, c0, options)?);
        cfg.h /= 2.0;
        cfg.delta /= 2.0;
    }
    let levels: Vec<_> = runs
        .iter()
        .map(|t| LevelReport {
            h: t.config.h,
            delta: t.config.delta,
            steps: t.final_state.n,
            final_radius: t.final_state.radius(t.config.h),
            alpha_space_bv: t.summary.alpha_space_bv_final,
            temporal_bv: t.summary.temporal_bv,
            max_mass_residual: t.summary.max_mass_residual,
            radius_decomposition_passed: t.summary.radius_decomposition.passed,
        })
        .collect();
    let l1_differences: Vec<f64> = runs
        .windows(2)
        .map(|w| l1_distance(&w[0].final_state.alpha, &w[1].final_state.alpha, w[1].config.h, 2))
        .collect();
    let difference_ratios = l1_differences.windows(2).map(|w| w[1] / w[0]).collect();
    Ok(RefinementReport {
        levels,
        l1_differences,
        difference_ratios,
    })
}
