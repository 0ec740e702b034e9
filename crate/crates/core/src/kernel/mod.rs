//! Shared building blocks: parameters, the uniform mesh, cell and nodal
//! fields, the tridiagonal solver, mass lumping and initial data.

mod field;
mod init;
mod lumping;
mod mesh;
mod params;
mod tridiag;

pub use field::{interpolate_linear, CellField, NodalField, State};
pub use init::{cell_average, init_state};
pub use lumping::{lump, p1_l2_norm, LumpedField};
pub use mesh::{build_mesh, Mesh};
pub use params::{ModelParams, SchemeConfig};
pub use tridiag::{solve_tridiagonal, Tridiagonal};
