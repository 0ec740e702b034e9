//! P1 finite element velocity on the recovered domain `(0, J_n h)`.
//!
//! The bilinear form is `k (a/(1-a) w, v) + mu (a w', v')` and the load is
//! `(H(a), v')`. With `a` constant per cell both integrals are exact on each
//! element. The Dirichlet node `x_0` is eliminated, so the unknowns are the
//! nodes `1..=J_n`; the Neumann condition at the radius is natural.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{CellField, Mesh, ModelParams, NodalField, SchemeConfig, Tridiagonal};

/// Tridiagonal velocity system over nodes `1..=J_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocitySystem {
    pub matrix: Tridiagonal,
    pub load: Vec<f64>,
}

/// A priori bounds that hold while `a_* <= alpha <= a^*` on the domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VelocityBounds {
    /// Bound on `max |u|`.
    pub u_max: f64,
    /// Bound on `max |mu alpha u'|`.
    pub flux_grad_max: f64,
    /// Bound on `max (mu alpha u')^-`.
    pub flux_grad_neg_max: f64,
    /// Bound on the variation of `mu alpha u' - H(alpha)`.
    pub bv_bound: f64,
}

fn check_domain(alpha: &[f64], jn: usize) -> Result<()> {
    if jn > alpha.len() {
        return Err(Error::Dimension(format!(
            "radius index {jn} exceeds {} cells",
            alpha.len()
        )));
    }
    for (cell, &value) in alpha[..jn].iter().enumerate() {
        if !(value > 0.0 && value < 1.0) {
            return Err(Error::DegenerateCoefficient { cell, value });
        }
    }
    Ok(())
}

pub fn assemble_velocity_system(
    alpha: &CellField,
    jn: usize,
    params: &ModelParams,
    mesh: &Mesh,
) -> Result<VelocitySystem> {
    if jn == 0 {
        return Err(Error::Dimension("velocity system needs J_n >= 1".into()));
    }
    check_domain(alpha, jn)?;
    let h = mesh.h();
    let mut matrix = Tridiagonal::zeros(jn);
    let mut load = vec![0.0; jn];

    // cell j couples nodes j and j+1, i.e. unknowns j-1 and j
    for (j, &a) in alpha[..jn].iter().enumerate() {
        let mass = params.k * h * a / (1.0 - a);
        let stiff = params.mu * a / h;
        let diag = mass / 3.0 + stiff;
        let off = mass / 6.0 - stiff;
        let stress = params.stress(a);

        matrix.add(j, j, diag);
        load[j] += stress;
        if j >= 1 {
            matrix.add(j - 1, j - 1, diag);
            matrix.add(j - 1, j, off);
            matrix.add(j, j - 1, off);
            load[j - 1] -= stress;
        }
    }
    Ok(VelocitySystem { matrix, load })
}

/// Nodal velocity on the whole mesh: the P1 solution on `(0, J_n h)` and
/// zero beyond.
pub fn solve_velocity(
    alpha: &CellField,
    jn: usize,
    params: &ModelParams,
    mesh: &Mesh,
) -> Result<NodalField> {
    let mut u = NodalField::filled(mesh.nodes(), 0.0);
    if jn == 0 {
        return Ok(u);
    }
    let system = assemble_velocity_system(alpha, jn, params, mesh)?;
    let x = system.matrix.solve(&system.load)?;
    u[1..=jn].copy_from_slice(&x);
    Ok(u)
}

/// Cellwise `mu alpha u' - H(alpha)` on the whole mesh, zero outside the
/// domain.
pub fn stress_flux(
    alpha: &CellField,
    u: &NodalField,
    jn: usize,
    params: &ModelParams,
    h: f64,
) -> Vec<f64> {
    (0..alpha.len())
        .map(|j| {
            if j < jn {
                params.mu * alpha[j] * u.slope(j, h) - params.stress(alpha[j])
            } else {
                0.0
            }
        })
        .collect()
}

/// `||sqrt(alpha) u'||` on the domain, integrated exactly.
pub fn weighted_gradient_norm(alpha: &CellField, u: &NodalField, jn: usize, h: f64) -> f64 {
    alpha[..jn]
        .iter()
        .enumerate()
        .map(|(j, &a)| {
            let du = u[j + 1] - u[j];
            a * du * du / h
        })
        .sum::<f64>()
        .sqrt()
}

/// Bound on `sqrt(mu) ||sqrt(alpha) u'||`,
/// `(1 + 1/sqrt(k)) sqrt(ellm / mu) |a^* - alphaR| / (1 - a^*)^2`.
pub fn energy_bound(params: &ModelParams, config: &SchemeConfig) -> f64 {
    let hi = config.a_star_hi;
    (1.0 + 1.0 / params.k.sqrt()) * (config.ellm / params.mu).sqrt() * (hi - params.alpha_r).abs()
        / ((1.0 - hi) * (1.0 - hi))
}

pub fn velocity_bounds(params: &ModelParams, config: &SchemeConfig) -> VelocityBounds {
    let hi = config.a_star_hi;
    let gap = (hi - params.alpha_r).abs();
    let one_minus = 1.0 - hi;
    let u_max = config.ellm * gap / (config.a_star_lo.sqrt() * params.mu * one_minus * one_minus);
    let bv_bound = config.ellm * (params.k / params.mu).sqrt() * gap / one_minus.powf(2.5);
    let stress_max = params.stress(hi);
    VelocityBounds {
        u_max,
        flux_grad_max: bv_bound + stress_max,
        flux_grad_neg_max: bv_bound,
        bv_bound,
    }
}
