//! Oxygen tension by lumped-mass backward Euler on `(0, J_n h)`.
//!
//! Unknowns are the nodes `0..J_n`; the node at the radius carries the
//! Dirichlet value 1 and every node beyond it is extended by 1.

use crate::error::{Error, Result};
use crate::kernel::{CellField, Mesh, ModelParams, NodalField, SchemeConfig, Tridiagonal};

/// Slack on `[0, 1]` before an oxygen value counts as out of range.
pub const RANGE_TOL: f64 = 1e-12;

/// Lumped oxygen system over nodes `0..J_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct OxygenSystem {
    pub mass: Vec<f64>,
    pub stiffness: Tridiagonal,
    pub reaction: Vec<f64>,
    /// Dirichlet lift, zero except `-lambda / h` in the last entry.
    pub lift: Vec<f64>,
    pub delta: f64,
    pub lambda: f64,
    pub q: f64,
}

impl OxygenSystem {
    /// `M + delta lambda D + Q delta S`.
    pub fn matrix(&self) -> Tridiagonal {
        let mut a = self.stiffness.clone();
        let s = self.delta * self.lambda;
        for v in a.lower.iter_mut().chain(a.upper.iter_mut()) {
            *v *= s;
        }
        for (i, d) in a.diag.iter_mut().enumerate() {
            *d = self.mass[i] + s * *d + self.q * self.delta * self.reaction[i];
        }
        a
    }

    /// `M c_prev - delta b`.
    pub fn rhs(&self, c_prev: &[f64]) -> Vec<f64> {
        self.mass
            .iter()
            .zip(c_prev)
            .zip(&self.lift)
            .map(|((m, c), b)| m * c - self.delta * b)
            .collect()
    }
}

pub fn assemble_oxygen_system(
    alpha: &CellField,
    c_prev: &NodalField,
    jn: usize,
    params: &ModelParams,
    config: &SchemeConfig,
    mesh: &Mesh,
) -> Result<OxygenSystem> {
    if jn == 0 {
        return Err(Error::Dimension("oxygen system needs J_n >= 1".into()));
    }
    if jn > alpha.len() || c_prev.len() < jn + 1 {
        return Err(Error::Dimension(format!(
            "radius index {jn} with {} cells and {} oxygen nodes",
            alpha.len(),
            c_prev.len()
        )));
    }
    let h = mesh.h();
    let mut mass = vec![h; jn];
    mass[0] = h / 2.0;

    let mut stiffness = Tridiagonal::zeros(jn);
    for i in 0..jn {
        // every unknown node touches the element to its right; node 0 has
        // no element on its left
        stiffness.add(i, i, 1.0 / h);
        if i > 0 {
            stiffness.add(i, i, 1.0 / h);
            stiffness.add(i, i - 1, -1.0 / h);
            stiffness.add(i - 1, i, -1.0 / h);
        }
    }

    let reaction = (0..jn)
        .map(|i| {
            let left = if i > 0 { alpha[i - 1] } else { 0.0 };
            h * (left + alpha[i]) / 4.0 / (1.0 + params.q1hat * c_prev[i].abs())
        })
        .collect();

    let mut lift = vec![0.0; jn];
    lift[jn - 1] = -params.lambda / h;

    Ok(OxygenSystem {
        mass,
        stiffness,
        reaction,
        lift,
        delta: config.delta,
        lambda: params.lambda,
        q: params.q,
    })
}

pub fn solve_oxygen(
    alpha: &CellField,
    c_prev: &NodalField,
    jn: usize,
    params: &ModelParams,
    config: &SchemeConfig,
    mesh: &Mesh,
) -> Result<NodalField> {
    let mut c = NodalField::filled(mesh.nodes(), 1.0);
    if jn == 0 {
        return Ok(c);
    }
    let system = assemble_oxygen_system(alpha, c_prev, jn, params, config, mesh)?;
    let x = system.matrix().solve(&system.rhs(&c_prev[..jn]))?;
    c[..jn].copy_from_slice(&x);
    if let Some((node, &value)) = c
        .iter()
        .enumerate()
        .find(|(_, &v)| !(-RANGE_TOL..=1.0 + RANGE_TOL).contains(&v))
    {
        return Err(Error::MaximumPrincipleViolated { node, value });
    }
    Ok(c)
}
