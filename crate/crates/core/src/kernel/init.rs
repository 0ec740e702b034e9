use crate::error::{Error, Result};

use super::field::{CellField, NodalField, State};
use super::mesh::Mesh;
use super::params::SchemeConfig;

const GAUSS_POINTS: [f64; 3] = [-0.774_596_669_241_483_4, 0.0, 0.774_596_669_241_483_4];
const GAUSS_WEIGHTS: [f64; 3] = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];
const DATA_TOL: f64 = 1e-12;

/// Mean of `f` over `(a, b)` by three-point Gauss–Legendre.
pub fn cell_average(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    0.5 * GAUSS_POINTS
        .iter()
        .zip(GAUSS_WEIGHTS)
        .map(|(p, w)| w * f(mid + half * p))
        .sum::<f64>()
}

/// Builds level 0 from the initial data on `(0, ell0)`.
///
/// `alpha` is the cell average of the zero extension of `alpha0`, `c` takes
/// the nodal values of `c0` inside the initial domain and `1` from `ell0`
/// onwards. The velocity is left at zero; the time loop fills it in.
pub fn init_state(
    alpha0: impl Fn(f64) -> f64,
    c0: impl Fn(f64) -> f64,
    config: &SchemeConfig,
    mesh: &Mesh,
) -> Result<State> {
    let j0 = config.initial_radius_index()?;
    if j0 > mesh.cells() {
        return Err(Error::Dimension(format!(
            "initial radius index {j0} exceeds {} cells",
            mesh.cells()
        )));
    }

    let mut alpha = CellField::filled(mesh.cells(), 0.0);
    for (j, a) in alpha.iter_mut().enumerate().take(j0) {
        let (lo, hi) = mesh.cell(j);
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        for p in GAUSS_POINTS {
            let x = mid + half * p;
            let v = alpha0(x);
            if !(v >= config.m01 - DATA_TOL && v <= config.m02 + DATA_TOL) {
                return Err(Error::InvalidInitialData {
                    x,
                    reason: format!("alpha0 = {v} outside [{}, {}]", config.m01, config.m02),
                });
            }
        }
        *a = cell_average(&alpha0, lo, hi);
    }

    let mut c = NodalField::filled(mesh.nodes(), 1.0);
    for (j, cj) in c.iter_mut().enumerate().take(j0) {
        let x = mesh.node(j);
        let v = c0(x);
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidInitialData {
                x,
                reason: format!("c0 = {v} outside [0, 1]"),
            });
        }
        *cj = v;
    }

    Ok(State {
        n: 0,
        alpha,
        u: NodalField::filled(mesh.nodes(), 0.0),
        c,
        radius_index: j0,
    })
}
