//! Monitors for the discrete properties the scheme is known to satisfy.
//!
//! Algebraic identities are checked to `1e-12`, analytic bounds to `1e-9`
//! relative.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::kernel::{Mesh, ModelParams, NodalField, SchemeConfig, State};
use crate::oxygen::RANGE_TOL;
use crate::transport::SourceCoeffs;
use crate::velocity::{stress_flux, velocity_bounds};
use crate::{neg, pos};

/// Tolerance for exact discrete identities.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Relative slack on analytic bounds.
pub const BOUND_RTOL: f64 = 1e-9;
/// Violations kept per monitor; the rest are only counted.
pub const LOG_CAP: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Monitor {
    /// Discrete mass identity.
    MassBalance,
    /// `0 <= c <= 1`.
    OxygenRange,
    /// `0 <= alpha <= a^*` on the whole box.
    AlphaGlobal,
    /// `a_* <= alpha <= a^*` on the tumour domain.
    AlphaWindow,
    /// `|u| <= u_max`.
    VelocityBound,
    /// Variation of `mu alpha u' - H(alpha)`.
    FluxBv,
    /// `sqrt(mu) ||sqrt(alpha) u'||`.
    Energy,
    /// Nonnegative diagonal weight in the advection update.
    Convexity,
    /// The radius grows by at most one cell per step.
    RadiusGrowth,
    Nonfinite,
}

impl Monitor {
    pub const ALL: [Monitor; 10] = [
        Monitor::MassBalance,
        Monitor::OxygenRange,
        Monitor::AlphaGlobal,
        Monitor::AlphaWindow,
        Monitor::VelocityBound,
        Monitor::FluxBv,
        Monitor::Energy,
        Monitor::Convexity,
        Monitor::RadiusGrowth,
        Monitor::Nonfinite,
    ];

    /// Monitors whose property holds at every step regardless of the
    /// existence horizon.
    pub fn is_unconditional(self) -> bool {
        matches!(
            self,
            Monitor::MassBalance | Monitor::OxygenRange | Monitor::RadiusGrowth | Monitor::Nonfinite
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Monitor::MassBalance => "mass_balance",
            Monitor::OxygenRange => "oxygen_range",
            Monitor::AlphaGlobal => "alpha_global",
            Monitor::AlphaWindow => "alpha_window",
            Monitor::VelocityBound => "velocity_bound",
            Monitor::FluxBv => "flux_bv",
            Monitor::Energy => "energy",
            Monitor::Convexity => "convexity",
            Monitor::RadiusGrowth => "radius_growth",
            Monitor::Nonfinite => "nonfinite",
        }
    }
}

impl std::fmt::Display for Monitor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A failed check. `location` is a cell or node index when the check is
/// local.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub monitor: Monitor,
    pub step: usize,
    pub location: Option<usize>,
    pub value: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepDiagnostics {
    pub step: usize,
    pub t: f64,
    pub mass_residual: f64,
    pub c_min: f64,
    pub c_max: f64,
    /// `+inf` for an empty domain.
    pub alpha_min_on_domain: f64,
    pub alpha_max: f64,
    pub u_inf_norm: f64,
    pub flux_bv: f64,
    pub alpha_space_bv: f64,
    pub energy: f64,
    /// Smallest diagonal weight of the advection update that produced
    /// this level, `1` at the initial level.
    pub convexity_margin: f64,
    pub radius: f64,
    pub radius_monotone_part: f64,
}

/// Outcome of the radius decomposition check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecompositionVerdict {
    pub passed: bool,
    pub first_offending_step: Option<usize>,
    /// Largest increase of the supposedly nonincreasing part.
    pub max_increase: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub steps: usize,
    pub max_mass_residual: f64,
    pub c_min: f64,
    pub c_max: f64,
    pub alpha_max: f64,
    pub u_inf_max: f64,
    pub flux_bv_max: f64,
    pub alpha_space_bv_final: f64,
    /// `h sum_n sum_j |alpha_j^{n+1} - alpha_j^n|`.
    pub temporal_bv: f64,
    pub min_convexity_margin: f64,
    pub radius_decomposition: DecompositionVerdict,
    pub violations: Vec<Violation>,
    pub violation_counts: BTreeMap<Monitor, usize>,
}

impl RunSummary {
    pub fn passed(&self) -> bool {
        self.violation_counts.values().all(|&n| n == 0)
    }

    pub fn count(&self, monitor: Monitor) -> usize {
        self.violation_counts.get(&monitor).copied().unwrap_or(0)
    }
}

/// Accumulates per-step diagnostics into a [`RunSummary`].
#[derive(Debug, Clone)]
pub struct SummaryBuilder {
    summary: RunSummary,
}

impl Default for SummaryBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl SummaryBuilder {
    pub fn new() -> Self {
        Self {
            summary: RunSummary {
                steps: 0,
                max_mass_residual: 0.0,
                c_min: f64::INFINITY,
                c_max: f64::NEG_INFINITY,
                alpha_max: f64::NEG_INFINITY,
                u_inf_max: 0.0,
                flux_bv_max: 0.0,
                alpha_space_bv_final: 0.0,
                temporal_bv: 0.0,
                min_convexity_margin: f64::INFINITY,
                radius_decomposition: DecompositionVerdict {
                    passed: true,
                    first_offending_step: None,
                    max_increase: f64::NEG_INFINITY,
                },
                violations: Vec::new(),
                violation_counts: Monitor::ALL.iter().map(|&m| (m, 0)).collect(),
            },
        }
    }

    pub fn observe(&mut self, d: &StepDiagnostics) {
        let s = &mut self.summary;
        s.steps = d.step;
        s.max_mass_residual = s.max_mass_residual.max(d.mass_residual);
        s.c_min = s.c_min.min(d.c_min);
        s.c_max = s.c_max.max(d.c_max);
        s.alpha_max = s.alpha_max.max(d.alpha_max);
        s.u_inf_max = s.u_inf_max.max(d.u_inf_norm);
        s.flux_bv_max = s.flux_bv_max.max(d.flux_bv);
        s.alpha_space_bv_final = d.alpha_space_bv;
        s.min_convexity_margin = s.min_convexity_margin.min(d.convexity_margin);
    }

    pub fn add_temporal_variation(&mut self, v: f64) {
        self.summary.temporal_bv += v;
    }

    pub fn record(&mut self, v: Violation) {
        let count = self.summary.violation_counts.entry(v.monitor).or_insert(0);
        *count += 1;
        if *count <= LOG_CAP {
            self.summary.violations.push(v);
        }
    }

    pub fn finish(mut self, decomposition: DecompositionVerdict) -> RunSummary {
        self.summary.radius_decomposition = decomposition;
        self.summary
    }
}

/// Relative defect of the discrete mass identity between two consecutive
/// levels.
pub fn mass_balance_residual(
    prev: &State,
    next: &State,
    coeffs: &SourceCoeffs,
    config: &SchemeConfig,
) -> f64 {
    let h = config.h;
    let thr = config.alpha_thr;
    let before: f64 = h * prev.alpha.iter().sum::<f64>();
    let after: f64 = h * next.alpha.iter().sum::<f64>();
    let source: f64 = prev
        .alpha
        .iter()
        .zip(next.alpha.iter())
        .zip(coeffs.growth.iter().zip(coeffs.death.iter()))
        .map(|((&a0, &a1), (&b, &d))| pos(a0 - thr) * (1.0 - a0) * b - pos(a1 - thr) * d)
        .sum();
    (after - before - config.delta * h * source).abs() / before.max(1e-30)
}

/// Pointwise bounds on a single level.
pub fn bound_monitor(state: &State, params: &ModelParams, config: &SchemeConfig) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |monitor, location, value, bound| {
        out.push(Violation {
            monitor,
            step: state.n,
            location: Some(location),
            value,
            bound,
        })
    };

    for (node, &c) in state.c.iter().enumerate() {
        if c < -RANGE_TOL {
            push(Monitor::OxygenRange, node, c, 0.0);
        } else if c > 1.0 + RANGE_TOL {
            push(Monitor::OxygenRange, node, c, 1.0);
        }
    }

    let lo = config.a_star_lo;
    let hi = config.a_star_hi;
    let hi_tol = hi * (1.0 + BOUND_RTOL);
    for (cell, &a) in state.alpha.iter().enumerate() {
        if a < -IDENTITY_TOL {
            push(Monitor::AlphaGlobal, cell, a, 0.0);
        } else if a > hi_tol {
            push(Monitor::AlphaGlobal, cell, a, hi);
        }
        if cell < state.radius_index {
            if a < lo * (1.0 - BOUND_RTOL) {
                push(Monitor::AlphaWindow, cell, a, lo);
            } else if a > hi_tol {
                push(Monitor::AlphaWindow, cell, a, hi);
            }
        }
    }

    let u_max = velocity_bounds(params, config).u_max;
    for (node, &u) in state.u.iter().enumerate() {
        if u.abs() > u_max * (1.0 + BOUND_RTOL) + IDENTITY_TOL {
            push(Monitor::VelocityBound, node, u.abs(), u_max);
        }
    }
    out
}

/// Total variation over the box of the cellwise constant `values`, with
/// the zero extension on both sides.
pub fn total_variation_with_zero_ends(values: &[f64]) -> f64 {
    match (values.first(), values.last()) {
        (Some(first), Some(last)) => {
            first.abs() + last.abs() + values.windows(2).map(|w| (w[1] - w[0]).abs()).sum::<f64>()
        }
        _ => 0.0,
    }
}

/// Spatial variation of `alpha` and of the flux `mu alpha u' - H(alpha)`,
/// both extended by zero outside the box.
pub fn bv_norms(state: &State, params: &ModelParams, mesh: &Mesh) -> (f64, f64) {
    let alpha_bv = total_variation_with_zero_ends(&state.alpha);
    let flux = stress_flux(&state.alpha, &state.u, state.radius_index, params, mesh.h());
    // the flux vanishes beyond the box; at x = 0 the left trace is not part
    // of the variation on (0, ellm)
    let flux_bv = flux.last().map_or(0.0, |v| v.abs())
        + flux.windows(2).map(|w| (w[1] - w[0]).abs()).sum::<f64>();
    (alpha_bv, flux_bv)
}

/// Smallest weight `1 - (delta/h)(u-_{j+1} + u+_j)` of `alpha_j` in the
/// convex part of the advection update driven by `u`. The update is that
/// combination of `alpha_{j-1}, alpha_j, alpha_{j+1}` minus
/// `delta alpha_j u'`.
pub fn convexity_margin(u: &NodalField, config: &SchemeConfig) -> f64 {
    let ratio = config.delta / config.h;
    u.windows(2)
        .map(|w| 1.0 - ratio * (neg(w[1]) + pos(w[0])))
        .fold(f64::INFINITY, f64::min)
}

/// `h sum_j |next_j - prev_j|`.
pub fn temporal_variation(prev: &State, next: &State, h: f64) -> f64 {
    h * prev
        .alpha
        .iter()
        .zip(next.alpha.iter())
        .map(|(a, b)| (b - a).abs())
        .sum::<f64>()
}

/// `ell_n - t_n / (rho C_CFL)`; just `ell_n` when `C_CFL` is unbounded.
pub fn radius_monotone_part(radius: f64, t: f64, rho: f64, c_cfl: f64) -> f64 {
    if c_cfl.is_finite() {
        radius - t / (rho * c_cfl)
    } else {
        radius
    }
}

/// Checks that `ell_n - t_n / (rho C_CFL)` is nonincreasing along the
/// series `(step, t, ell)`.
pub fn radius_decomposition(series: &[(usize, f64, f64)], rho: f64, c_cfl: f64) -> DecompositionVerdict {
    let mut verdict = DecompositionVerdict {
        passed: true,
        first_offending_step: None,
        max_increase: f64::NEG_INFINITY,
    };
    for w in series.windows(2) {
        let (_, t0, l0) = w[0];
        let (step, t1, l1) = w[1];
        let inc = radius_monotone_part(l1, t1, rho, c_cfl) - radius_monotone_part(l0, t0, rho, c_cfl);
        verdict.max_increase = verdict.max_increase.max(inc);
        let scale = l0.abs().max(l1.abs()).max(1.0);
        if inc > IDENTITY_TOL * scale && verdict.passed {
            verdict.passed = false;
            verdict.first_offending_step = Some(step);
        }
    }
    verdict
}

/// Velocity with the value at the radius carried to the end of the box,
/// which makes it continuous.
pub fn extend_velocity_hat(state: &State, mesh: &Mesh) -> NodalField {
    let jn = state.radius_index.min(mesh.cells());
    let edge = state.u[jn];
    let mut out = state.u.clone();
    out[jn + 1..].iter_mut().for_each(|v| *v = edge);
    out
}

/// First non-finite entry of `alpha`, `u`, `c` taken in that order.
pub fn nonfinite_entries(state: &State) -> Option<(usize, f64)> {
    state
        .alpha
        .iter()
        .chain(state.u.iter())
        .chain(state.c.iter())
        .enumerate()
        .find(|(_, v)| !v.is_finite())
        .map(|(i, &v)| (i, v))
}
