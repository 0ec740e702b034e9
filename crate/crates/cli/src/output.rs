//! CSV and JSON artefacts.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use serde_json::{json, Value};
use tumor_core::diagnostics::Monitor;
use tumor_core::orchestrator::{CflReport, HorizonRow, Trajectory};
use tumor_core::{CellField, Mesh, NodalField, State};

use crate::config::ReferenceValues;

/// Full precision float, enough to round-trip every `f64`.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Snapshot table `x,alpha,u,c` with one row per node. `alpha` is the value
/// of the containing cell and is repeated at the last node.
pub fn snapshot_csv(state: &State, mesh: &Mesh) -> String {
    let mut out = String::from("x,alpha,u,c\n");
    let cells = state.alpha.len();
    for j in 0..=cells {
        let a = state.alpha[j.min(cells - 1)];
        let _ = writeln!(
            out,
            "{},{},{},{}",
            num(mesh.node(j)),
            num(a),
            num(state.u[j]),
            num(state.c[j])
        );
    }
    out
}

/// Fields read back from a snapshot table.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotData {
    pub x: Vec<f64>,
    pub alpha: CellField,
    pub u: NodalField,
    pub c: NodalField,
}

pub fn parse_snapshot_csv(text: &str) -> Result<SnapshotData, String> {
    let mut lines = text.lines();
    if lines.next() != Some("x,alpha,u,c") {
        return Err("missing header x,alpha,u,c".into());
    }
    let (mut x, mut alpha, mut u, mut c) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (i, line) in lines.enumerate() {
        let row: Vec<f64> = line
            .split(',')
            .map(|s| s.parse::<f64>().map_err(|e| format!("row {}: {e}", i + 1)))
            .collect::<Result<_, _>>()?;
        if row.len() != 4 {
            return Err(format!("row {}: expected 4 columns", i + 1));
        }
        x.push(row[0]);
        alpha.push(row[1]);
        u.push(row[2]);
        c.push(row[3]);
    }
    if x.len() < 2 {
        return Err("need at least two nodes".into());
    }
    alpha.pop();
    Ok(SnapshotData {
        x,
        alpha: CellField(alpha),
        u: NodalField(u),
        c: NodalField(c),
    })
}

/// `t,ell` for every level.
pub fn radius_csv(trajectory: &Trajectory) -> String {
    let mut out = String::from("t,ell\n");
    for (t, ell) in trajectory.radius_series() {
        let _ = writeln!(out, "{},{}", num(t), num(ell));
    }
    out
}

pub fn parse_radius_csv(text: &str) -> Result<Vec<(f64, f64)>, String> {
    let mut lines = text.lines();
    if lines.next() != Some("t,ell") {
        return Err("missing header t,ell".into());
    }
    lines
        .map(|l| {
            let (a, b) = l.split_once(',').ok_or("expected two columns")?;
            Ok((
                a.parse().map_err(|e| format!("{e}"))?,
                b.parse().map_err(|e| format!("{e}"))?,
            ))
        })
        .collect()
}

pub fn snapshot_file_name(step: usize) -> String {
    format!("snapshot_{step:07}.csv")
}

/// Comparison of the computed CFL constant with a published value.
pub fn cfl_comparison(cfl: &CflReport, reference: &ReferenceValues) -> Value {
    match reference.c_cfl {
        Some(r) => json!({
            "c_cfl_computed": cfl.c_cfl,
            "c_cfl_reference": r,
            "relative_difference": (cfl.c_cfl - r) / r,
            "ratio_admissible_under_reference": cfl.ratio <= r && cfl.ratio >= cfl.lower.min(r),
        }),
        None => Value::Null,
    }
}

pub fn summary_json(trajectory: &Trajectory, reference: &ReferenceValues) -> Value {
    let s = &trajectory.summary;
    let monitors: serde_json::Map<String, Value> = Monitor::ALL
        .iter()
        .map(|&m| {
            let n = s.count(m);
            (m.name().to_string(), json!({ "violations": n, "passed": n == 0 }))
        })
        .collect();
    let horizon = match &trajectory.horizon {
        Ok(h) => serde_json::to_value(h).unwrap_or(Value::Null),
        Err(e) => json!({ "error": e }),
    };
    json!({
        "termination": trajectory.termination,
        "forced": trajectory.options.mode == tumor_core::orchestrator::Mode::Forced,
        "steps": trajectory.final_state.n,
        "final_time": trajectory.final_state.time(trajectory.config.delta),
        "final_radius": trajectory.final_state.radius(trajectory.config.h),
        "params": trajectory.params,
        "scheme": trajectory.config,
        "cfl": trajectory.cfl,
        "cfl_reference_comparison": cfl_comparison(&trajectory.cfl, reference),
        "horizon": horizon,
        "monitors": monitors,
        "radius_decomposition": s.radius_decomposition,
        "all_monitors_passed": s.passed(),
        "max_mass_residual": s.max_mass_residual,
        "c_range": [s.c_min, s.c_max],
        "alpha_max": s.alpha_max,
        "u_inf_max": s.u_inf_max,
        "flux_bv_max": s.flux_bv_max,
        "alpha_space_bv_final": s.alpha_space_bv_final,
        "temporal_bv": s.temporal_bv,
        "min_convexity_margin": s.min_convexity_margin,
        "violations": s.violations,
    })
}

pub fn sweep_csv(rows: &[HorizonRow]) -> String {
    let mut out = String::from("m02,a_star_lo,a_star_hi,F_min,F_max,T_m,T_M,T_ell,T_star\n");
    for r in rows {
        let _ = write!(out, "{},{},{}", num(r.m02), num(r.a_star_lo), num(r.a_star_hi));
        match r.horizon {
            Some(h) => {
                for v in [h.f_min, h.f_max, h.t_m, h.t_big_m, h.t_ell, h.t_star] {
                    let _ = write!(out, ",{}", num(v));
                }
                out.push('\n');
            }
            None => out.push_str(",,,,,,\n"),
        }
    }
    out
}

pub fn write(path: &Path, contents: &str) -> io::Result<()> {
    std::fs::write(path, contents)
}
