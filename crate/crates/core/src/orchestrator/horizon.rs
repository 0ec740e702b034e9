use serde::{Deserialize, Serialize};

use super::cfl::c_cfl;
use crate::error::{Error, Result};
use crate::kernel::{ModelParams, SchemeConfig};
use crate::pos;

/// Times up to which the bounds `a_* <= alpha <= a^*` are guaranteed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Horizon {
    #[serde(rename = "F_min")]
    pub f_min: f64,
    #[serde(rename = "F_max")]
    pub f_max: f64,
    /// Lower bound stays above `a_*` until here.
    #[serde(rename = "T_m")]
    pub t_m: f64,
    /// Upper bound stays below `a^*` until here.
    #[serde(rename = "T_M")]
    pub t_big_m: f64,
    /// The radius stays inside the box until here.
    #[serde(rename = "T_ell")]
    pub t_ell: f64,
    #[serde(rename = "T_star")]
    pub t_star: f64,
}

pub fn existence_horizon(params: &ModelParams, config: &SchemeConfig) -> Result<Horizon> {
    let lo = config.a_star_lo;
    let hi = config.a_star_hi;
    let thr = config.alpha_thr;
    if !(lo > 0.0 && lo < thr) {
        return Err(Error::PreconditionViolated(format!(
            "a_star_lo = {lo} must lie in (0, alpha_thr = {thr})"
        )));
    }
    if !(config.m02 < hi && hi < 1.0) {
        return Err(Error::PreconditionViolated(format!(
            "a_star_hi = {hi} must lie in (m02 = {}, 1)",
            config.m02
        )));
    }
    let (k, mu, s2) = (params.k, params.mu, params.s2);
    let gap = (hi - params.alpha_r).abs();
    let grad = config.ellm * k.sqrt() * gap / (mu.powf(1.5) * (1.0 - hi).powf(2.5));

    let f_min = grad + hi * pos(hi - params.alpha_r) / (mu * (1.0 - hi) * (1.0 - hi));
    let t_m = ((f_min + s2 * thr) / (f_min + lo * s2)).ln() / s2;
    let f_max = 1.0 - thr + grad / lo;
    let t_big_m = (hi - config.m02) / f_max;
    let t_ell = config.rho * c_cfl(params, config) * (config.ellm - config.ell0);
    Ok(Horizon {
        f_min,
        f_max,
        t_m,
        t_big_m,
        t_ell,
        t_star: t_m.min(t_big_m).min(t_ell),
    })
}
