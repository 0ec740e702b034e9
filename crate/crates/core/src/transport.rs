//! Explicit upwind finite volume advance of the cell volume fraction and
//! recovery of the discrete tumour radius.
//!
//! For each cell the update reads
//!
//! ```text
//! K_j = a_j - (dt/h) [u+_{j+1} a_j - u-_{j+1} a_{j+1} - u+_j a_{j-1} + u-_j a_j]
//!           + dt (a_j - thr)^+ (1 - a_j) b_j
//! a_j^new + dt (a_j^new - thr)^+ d_j = K_j
//! ```
//!
//! with nodal velocities `u`, growth factor `b` and death factor `d` taken
//! from the previous level. The sink is implicit in `a_j^new` and solved in
//! closed form by [`resolve_sink`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{CellField, ModelParams, NodalField, SchemeConfig, State};
use crate::{neg, pos};

/// Cellwise growth (`b`) and death (`d`) factors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceCoeffs {
    pub growth: CellField,
    pub death: CellField,
}

/// Pointwise averages over each cell of the growth and death factors of the
/// nodal oxygen `c`.
pub fn source_coeffs(c: &NodalField, params: &ModelParams) -> SourceCoeffs {
    let cells = c.len() - 1;
    let mut growth = Vec::with_capacity(cells);
    let mut death = Vec::with_capacity(cells);
    for w in c.windows(2) {
        growth.push(0.5 * (params.growth(w[0]) + params.growth(w[1])));
        death.push(0.5 * (params.death(w[0]) + params.death(w[1])));
    }
    SourceCoeffs {
        growth: CellField(growth),
        death: CellField(death),
    }
}

/// Unique solution `a` of `a + delta (a - alpha_thr)^+ d = k` for `d >= 0`.
#[inline]
pub fn resolve_sink(k: f64, d: f64, delta: f64, alpha_thr: f64) -> f64 {
    if k <= alpha_thr {
        k
    } else {
        (k + delta * d * alpha_thr) / (1.0 + delta * d)
    }
}

/// Upwind interface flux at a node with velocity `u`, donor cells on the
/// left and right.
#[inline]
pub fn upwind_flux(u: f64, left: f64, right: f64) -> f64 {
    pos(u) * left - neg(u) * right
}

/// Advances `alpha` by one explicit step. The CFL window is the caller's
/// responsibility.
pub fn advance_alpha(prev: &State, coeffs: &SourceCoeffs, config: &SchemeConfig) -> CellField {
    let alpha = &prev.alpha;
    let u = &prev.u;
    let cells = alpha.len();
    let ratio = config.delta / config.h;
    let thr = config.alpha_thr;

    let mut next = Vec::with_capacity(cells);
    for j in 0..cells {
        let a = alpha[j];
        // ghost values: u_0 = 0 kills the left one, u_J = 0 the right one
        let left = if j == 0 { a } else { alpha[j - 1] };
        let right = if j + 1 < cells { alpha[j + 1] } else { 0.0 };
        let flux_out = upwind_flux(u[j + 1], a, right);
        let flux_in = upwind_flux(u[j], left, a);
        let k = a - ratio * (flux_out - flux_in)
            + config.delta * pos(a - thr) * (1.0 - a) * coeffs.growth[j];
        next.push(resolve_sink(k, coeffs.death[j], config.delta, thr));
    }
    CellField(next)
}

/// Radius index: one past the last cell with `alpha >= alpha_thr`, zero for
/// an empty tumour.
pub fn recover_radius(alpha: &CellField, config: &SchemeConfig) -> Result<usize> {
    let thr = config.alpha_thr;
    let cells = alpha.len();
    if let Some(&last) = alpha.last() {
        if last >= thr {
            return Err(Error::DomainSaturated {
                cell: cells - 1,
                value: last,
            });
        }
    }
    Ok(alpha
        .iter()
        .rposition(|&a| a >= thr)
        .map_or(0, |j| j + 1))
}
