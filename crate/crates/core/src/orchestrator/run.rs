use serde::{Deserialize, Serialize};

use super::cfl::{validate_cfl, CflReport};
use super::horizon::{existence_horizon, Horizon};
use crate::diagnostics::{
    bound_monitor, bv_norms, convexity_margin, mass_balance_residual, nonfinite_entries,
    radius_decomposition, radius_monotone_part, temporal_variation, Monitor, RunSummary,
    StepDiagnostics, SummaryBuilder, Violation, IDENTITY_TOL,
};
use crate::error::{Error, Result};
use crate::kernel::{build_mesh, init_state, Mesh, ModelParams, SchemeConfig, State};
use crate::transport::{advance_alpha, recover_radius, source_coeffs, SourceCoeffs};
use crate::velocity::{energy_bound, solve_velocity, velocity_bounds, weighted_gradient_norm};
use crate::oxygen::solve_oxygen;

/// How monitor failures are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// An infeasible step-size window is an error and a violated monitor
    /// ends the run.
    #[default]
    Strict,
    /// Runs regardless and only records what fails.
    Forced,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunOptions {
    /// Number of evenly spaced snapshots besides the initial and final
    /// levels.
    pub snapshot_count: usize,
    pub mode: Mode,
    /// End the run at the existence horizon when it is defined.
    pub stop_at_horizon: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            snapshot_count: 10,
            mode: Mode::Strict,
            stop_at_horizon: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Termination {
    Completed,
    HorizonReached { step: usize },
    /// The tumour would leave the box at this step; the trajectory ends at
    /// the previous level.
    DomainSaturated { step: usize },
    InvariantViolation { monitor: Monitor, step: usize },
    /// A solver error ended a forced run; strict runs return it instead.
    SolverFailure { step: usize, error: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub params: ModelParams,
    pub config: SchemeConfig,
    pub options: RunOptions,
    pub cfl: CflReport,
    /// The existence horizon, or why it is undefined for this configuration.
    pub horizon: std::result::Result<Horizon, String>,
    pub snapshots: Vec<State>,
    /// One entry per level, starting with the initial one.
    pub diagnostics: Vec<StepDiagnostics>,
    pub final_state: State,
    pub termination: Termination,
    pub summary: RunSummary,
}

impl Trajectory {
    pub fn mesh(&self) -> Mesh {
        Mesh::new(self.config.h, self.final_state.alpha.len())
    }

    /// `(t_n, ell_n)` for every level.
    pub fn radius_series(&self) -> Vec<(f64, f64)> {
        self.diagnostics.iter().map(|d| (d.t, d.radius)).collect()
    }
}

/// Level 0 with its velocity.
pub fn initial_state(
    params: &ModelParams,
    config: &SchemeConfig,
    mesh: &Mesh,
    alpha0: impl Fn(f64) -> f64,
    c0: impl Fn(f64) -> f64,
) -> Result<State> {
    let mut state = init_state(alpha0, c0, config, mesh)?;
    state.u = solve_velocity(&state.alpha, state.radius_index, params, mesh)?;
    Ok(state)
}

/// One step, also returning the source coefficients it used.
pub fn step_with_coeffs(
    prev: &State,
    params: &ModelParams,
    config: &SchemeConfig,
    mesh: &Mesh,
) -> Result<(State, SourceCoeffs)> {
    let n = prev.n + 1;
    let inner = || -> Result<(State, SourceCoeffs)> {
        let coeffs = source_coeffs(&prev.c, params);
        let alpha = advance_alpha(prev, &coeffs, config);
        let jn = recover_radius(&alpha, config)?;
        let u = solve_velocity(&alpha, jn, params, mesh)?;
        let c = solve_oxygen(&alpha, &prev.c, jn, params, config, mesh)?;
        Ok((
            State {
                n,
                alpha,
                u,
                c,
                radius_index: jn,
            },
            coeffs,
        ))
    };
    inner().map_err(|e| e.at_step(n))
}

/// Advances one level: transport, radius, velocity, oxygen.
pub fn step(prev: &State, params: &ModelParams, config: &SchemeConfig, mesh: &Mesh) -> Result<State> {
    step_with_coeffs(prev, params, config, mesh).map(|(s, _)| s)
}

struct Monitoring<'a> {
    params: &'a ModelParams,
    config: &'a SchemeConfig,
    mesh: &'a Mesh,
    c_cfl: f64,
    u_bounds: crate::velocity::VelocityBounds,
    energy_bound: f64,
    horizon: Option<f64>,
    builder: SummaryBuilder,
}

impl Monitoring<'_> {
    fn diagnose(&self, state: &State, mass_residual: f64, margin: f64) -> StepDiagnostics {
        let h = self.config.h;
        let jn = state.radius_index;
        let (alpha_bv, flux_bv) = bv_norms(state, self.params, self.mesh);
        let t = state.time(self.config.delta);
        let radius = state.radius(h);
        let fold = |it: &mut dyn Iterator<Item = f64>, init: f64, f: fn(f64, f64) -> f64| it.fold(init, f);
        StepDiagnostics {
            step: state.n,
            t,
            mass_residual,
            c_min: fold(&mut state.c.iter().copied(), f64::INFINITY, f64::min),
            c_max: fold(&mut state.c.iter().copied(), f64::NEG_INFINITY, f64::max),
            alpha_min_on_domain: fold(&mut state.domain_alpha().iter().copied(), f64::INFINITY, f64::min),
            alpha_max: fold(&mut state.alpha.iter().copied(), f64::NEG_INFINITY, f64::max),
            u_inf_norm: fold(&mut state.u.iter().map(|v| v.abs()), 0.0, f64::max),
            flux_bv,
            alpha_space_bv: alpha_bv,
            energy: self.params.mu.sqrt() * weighted_gradient_norm(&state.alpha, &state.u, jn, h),
            convexity_margin: margin,
            radius,
            radius_monotone_part: radius_monotone_part(radius, t, self.config.rho, self.c_cfl),
        }
    }

    /// Collects violations for one level.
    fn check(&self, state: &State, d: &StepDiagnostics, prev_radius: Option<usize>) -> Vec<Violation> {
        let step = state.n;
        let v = |monitor, location, value, bound| Violation {
            monitor,
            step,
            location,
            value,
            bound,
        };
        let mut out = Vec::new();
        if let Some((i, x)) = nonfinite_entries(state) {
            out.push(v(Monitor::Nonfinite, Some(i), x, 0.0));
            return out;
        }
        if d.mass_residual > IDENTITY_TOL {
            out.push(v(Monitor::MassBalance, None, d.mass_residual, IDENTITY_TOL));
        }
        if let Some(prev) = prev_radius {
            if state.radius_index > prev + 1 {
                out.push(v(
                    Monitor::RadiusGrowth,
                    Some(state.radius_index),
                    state.radius_index as f64,
                    (prev + 1) as f64,
                ));
            }
        }
        out.extend(bound_monitor(state, self.params, self.config));

        let lo = self.config.a_star_lo;
        let hi = self.config.a_star_hi;
        let in_window = state.domain_alpha().iter().all(|&a| a >= lo && a <= hi);
        if in_window {
            let slack = |b: f64| b * (1.0 + crate::diagnostics::BOUND_RTOL) + IDENTITY_TOL;
            if d.flux_bv > slack(self.u_bounds.bv_bound) {
                out.push(v(Monitor::FluxBv, None, d.flux_bv, self.u_bounds.bv_bound));
            }
            if d.energy > slack(self.energy_bound) {
                out.push(v(Monitor::Energy, None, d.energy, self.energy_bound));
            }
        }
        out
    }

    /// Whether a violation of `monitor` at time `t` contradicts a proven
    /// property.
    fn is_binding(&self, monitor: Monitor, t: f64) -> bool {
        monitor.is_unconditional() || self.horizon.is_some_and(|ts| t <= ts)
    }
}

/// Runs the coupled scheme from the given initial data up to `t_final`.
pub fn run(
    params: &ModelParams,
    config: &SchemeConfig,
    alpha0: impl Fn(f64) -> f64,
    c0: impl Fn(f64) -> f64,
    options: RunOptions,
) -> Result<Trajectory> {
    params.validate()?;
    config.validate()?;
    let cfl = validate_cfl(params, config);
    let strict = options.mode == Mode::Strict;
    if strict && !cfl.feasible {
        return Err(Error::CflInfeasible {
            ratio: cfl.ratio,
            lower: cfl.lower,
            upper: cfl.c_cfl,
            delta: cfl.delta,
            delta_cap: cfl.delta_cap,
        });
    }
    let horizon = existence_horizon(params, config).map_err(|e| e.to_string());
    let mesh = build_mesh(config)?;

    let mut steps = config.step_count();
    let mut stopped_at_horizon = false;
    if options.stop_at_horizon {
        if let Ok(hz) = &horizon {
            let last = (hz.t_star / config.delta).floor();
            if last < steps as f64 {
                steps = last as usize;
                stopped_at_horizon = true;
            }
        }
    }
    let every = (steps / options.snapshot_count.max(1)).max(1);

    let mut mon = Monitoring {
        params,
        config,
        mesh: &mesh,
        c_cfl: cfl.c_cfl,
        u_bounds: velocity_bounds(params, config),
        energy_bound: energy_bound(params, config),
        horizon: horizon.as_ref().ok().map(|h| h.t_star),
        builder: SummaryBuilder::new(),
    };

    let mut state = initial_state(params, config, &mesh, alpha0, c0)?;
    let mut diagnostics = Vec::with_capacity(steps + 1);
    let mut snapshots = vec![state.clone()];
    let mut termination = if stopped_at_horizon {
        Termination::HorizonReached { step: steps }
    } else {
        Termination::Completed
    };

    let d0 = mon.diagnose(&state, 0.0, 1.0);
    let mut abort = None;
    for v in mon.check(&state, &d0, None) {
        if strict && abort.is_none() && mon.is_binding(v.monitor, d0.t) {
            abort = Some(v.monitor);
        }
        mon.builder.record(v);
    }
    mon.builder.observe(&d0);
    diagnostics.push(d0);

    if let Some(monitor) = abort {
        termination = Termination::InvariantViolation { monitor, step: 0 };
    } else {
        for n in 1..=steps {
            // checked before stepping since a lost convex combination
            // usually breaks the step itself
            let margin = convexity_margin(&state.u, config);
            if margin < -IDENTITY_TOL {
                let t = n as f64 * config.delta;
                if strict && mon.is_binding(Monitor::Convexity, t) {
                    abort = Some(Monitor::Convexity);
                }
                mon.builder.record(Violation {
                    monitor: Monitor::Convexity,
                    step: n,
                    location: None,
                    value: margin,
                    bound: 0.0,
                });
                if abort.is_some() {
                    termination = Termination::InvariantViolation {
                        monitor: Monitor::Convexity,
                        step: n,
                    };
                    break;
                }
            }
            let (next, coeffs) = match step_with_coeffs(&state, params, config, &mesh) {
                Ok(r) => r,
                Err(e) if matches!(e.root(), Error::DomainSaturated { .. }) => {
                    termination = Termination::DomainSaturated { step: n };
                    break;
                }
                Err(e) if !strict => {
                    termination = Termination::SolverFailure {
                        step: n,
                        error: e.to_string(),
                    };
                    break;
                }
                Err(e) => return Err(e),
            };
            let residual = mass_balance_residual(&state, &next, &coeffs, config);
            let d = mon.diagnose(&next, residual, margin);
            for v in mon.check(&next, &d, Some(state.radius_index)) {
                if strict && abort.is_none() && mon.is_binding(v.monitor, d.t) {
                    abort = Some(v.monitor);
                }
                mon.builder.record(v);
            }
            mon.builder.observe(&d);
            mon.builder.add_temporal_variation(temporal_variation(&state, &next, config.h));
            diagnostics.push(d);
            state = next;
            if n % every == 0 && n != steps {
                snapshots.push(state.clone());
            }
            if let Some(monitor) = abort {
                termination = Termination::InvariantViolation { monitor, step: n };
                break;
            }
        }
    }
    if snapshots.last().map(|s| s.n) != Some(state.n) {
        snapshots.push(state.clone());
    }

    let series: Vec<_> = diagnostics.iter().map(|d| (d.step, d.t, d.radius)).collect();
    let decomposition = radius_decomposition(&series, config.rho, cfl.c_cfl);
    Ok(Trajectory {
        params: *params,
        config: *config,
        options,
        cfl,
        horizon,
        snapshots,
        diagnostics,
        final_state: state,
        termination,
        summary: mon.builder.finish(decomposition),
    })
}
