//! Time loop, step-size window, existence horizon and parameter studies.

mod cfl;
mod horizon;
mod refine;
mod run;
mod sweep;

pub use cfl::{validate_cfl, CflReport};
pub use horizon::{existence_horizon, Horizon};
pub use refine::{refine, LevelReport, RefinementReport};
pub use run::{initial_state, run, step, step_with_coeffs, Mode, RunOptions, Termination, Trajectory};
pub use sweep::{best_over_a_hi, linspace, sweep_horizon, HorizonGrid, HorizonRow};
