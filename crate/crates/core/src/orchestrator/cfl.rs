use serde::{Deserialize, Serialize};

use crate::kernel::{ModelParams, SchemeConfig};

/// Admissible window for `delta / h` and the absolute cap on `delta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CflReport {
    /// Upper bound on `delta / h`, infinite when `a^* = alphaR`.
    pub c_cfl: f64,
    pub unbounded: bool,
    pub ratio: f64,
    /// `rho C_CFL`, zero when unbounded.
    pub lower: f64,
    pub delta: f64,
    pub delta_cap: f64,
    pub feasible: bool,
}

/// `C_CFL = sqrt(a_*) mu (1 - a^*)^2 / (2 ellm |a^* - alphaR|)`.
pub fn c_cfl(params: &ModelParams, config: &SchemeConfig) -> f64 {
    let hi = config.a_star_hi;
    let gap = (hi - params.alpha_r).abs();
    if gap == 0.0 {
        return f64::INFINITY;
    }
    config.a_star_lo.sqrt() * params.mu * (1.0 - hi) * (1.0 - hi) / (2.0 * config.ellm * gap)
}

pub fn validate_cfl(params: &ModelParams, config: &SchemeConfig) -> CflReport {
    let c = c_cfl(params, config);
    let unbounded = c.is_infinite();
    let ratio = config.ratio();
    let rho = config.rho;
    let lower = if unbounded { 0.0 } else { rho * c };
    let delta_cap = ((1.0 - rho) / params.s2).min(2.0 * (1.0 - rho) / (1.0 + params.s2));
    let feasible = lower <= ratio && ratio <= c && config.delta < delta_cap;
    CflReport {
        c_cfl: c,
        unbounded,
        ratio,
        lower,
        delta: config.delta,
        delta_cap,
        feasible,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_window() {
        let r = validate_cfl(&ModelParams::reference(), &SchemeConfig::reference());
        assert!((r.c_cfl - 0.051_229).abs() < 1e-5, "{}", r.c_cfl);
        assert!((r.ratio - 0.02).abs() < 1e-15);
        assert!((r.delta_cap - 1.2).abs() < 1e-15);
        assert!(r.feasible && !r.unbounded);
    }

    #[test]
    fn c_cfl_is_half_inverse_velocity_bound() {
        let p = ModelParams::reference();
        let cfg = SchemeConfig::reference();
        let u_max = crate::velocity::velocity_bounds(&p, &cfg).u_max;
        assert!((c_cfl(&p, &cfg) * 2.0 * u_max - 1.0).abs() < 1e-14);
    }

    #[test]
    fn too_large_a_step_is_rejected() {
        let cfg = SchemeConfig {
            delta: 5e-3,
            ..SchemeConfig::reference()
        };
        assert!(!validate_cfl(&ModelParams::reference(), &cfg).feasible);
    }

    #[test]
    fn cap_closes_as_rho_approaches_one() {
        let cfg = SchemeConfig {
            rho: 1.0 - 1e-9,
            ..SchemeConfig::reference()
        };
        let r = validate_cfl(&ModelParams::reference(), &cfg);
        assert!(r.delta_cap < 1e-8);
        assert!(!r.feasible);
    }

    #[test]
    fn unbounded_at_repulsion_threshold() {
        let cfg = SchemeConfig {
            a_star_hi: 0.8,
            ..SchemeConfig::reference()
        };
        let r = validate_cfl(&ModelParams::reference(), &cfg);
        assert!(r.unbounded && r.c_cfl.is_infinite());
        assert_eq!(r.lower, 0.0);
        assert!(r.feasible);
    }
}
