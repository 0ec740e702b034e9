//! Discrete threshold scheme for a one-dimensional two-phase tumour growth
//! model.
//!
//! The cell volume fraction `alpha` is advanced by an explicit upwind finite
//! volume step with a semi-implicit thresholded sink, the tumour radius is
//! recovered from the cells that sit above a small threshold, the cell
//! velocity `u` is a P1 finite element solution on the recovered domain and
//! the oxygen tension `c` is a backward Euler, mass-lumped P1 solution with
//! unit Dirichlet data at the moving boundary. Everything lives on a fixed
//! bounding box `(0, ellm)` with a uniform mesh.
//!
//! Module map:
//!
//! * [`kernel`]: parameters, mesh, fields, tridiagonal solver, lumping,
//!   initial data.
//! * [`transport`]: upwind advance of `alpha` and radius recovery.
//! * [`velocity`]: P1 velocity system and its a priori bounds.
//! * [`oxygen`]: lumped backward Euler oxygen system.
//! * [`orchestrator`]: CFL window, existence horizon, time loop, sweeps and
//!   refinement studies.
//! * [`diagnostics`]: per-step monitors of every provable discrete property.

pub mod diagnostics;
pub mod error;
pub mod kernel;
pub mod orchestrator;
pub mod oxygen;
pub mod transport;
pub mod velocity;

pub use error::{Error, Result};
pub use kernel::{p1_l2_norm, 
    build_mesh, init_state, interpolate_linear, lump, solve_tridiagonal, CellField, LumpedField,
    Mesh, ModelParams, NodalField, SchemeConfig, State, Tridiagonal,
};

/// Positive part `max(a, 0)`.
#[inline]
pub fn pos(a: f64) -> f64 {
    a.max(0.0)
}

/// Negative part `-min(a, 0)`, so that `a = pos(a) - neg(a)`.
#[inline]
pub fn neg(a: f64) -> f64 {
    -(a.min(0.0))
}
