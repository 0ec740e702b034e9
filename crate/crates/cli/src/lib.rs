//! Command-line front end for `tumor-core`: configuration files, the
//! subcommands, and CSV / JSON / SVG output.

pub mod config;
pub mod output;
pub mod svg;

use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use thiserror::Error;
use tumor_core::orchestrator::{
    existence_horizon, linspace, refine, run, sweep_horizon, validate_cfl, HorizonGrid, Mode,
    RefinementReport, RunOptions, Termination, Trajectory,
};

pub use config::{parse_config, parse_config_str, ConfigError, Profile, RunConfig};
pub use svg::{render_svg, Field};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("invalid --grid: {0}")]
    Grid(String),
    #[error(transparent)]
    Model(#[from] tumor_core::Error),
    #[error("run ended early: {0}")]
    Run(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for bad input, 1 for anything the model or the file system
    /// rejected.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Grid(_) => 2,
            _ => 1,
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    output::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn create_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })
}

pub fn run_options(cfg: &RunConfig, force: bool) -> RunOptions {
    RunOptions {
        snapshot_count: cfg.output.snapshots,
        mode: if force { Mode::Forced } else { cfg.mode },
        stop_at_horizon: cfg.stop_at_horizon,
    }
}

pub fn simulate(cfg: &RunConfig, options: RunOptions) -> Result<Trajectory, CliError> {
    let (a, c) = (cfg.alpha0.clone(), cfg.c0.clone());
    Ok(run(&cfg.model, &cfg.scheme, move |x| a.eval(x), move |x| c.eval(x), options)?)
}

/// Writes snapshots, `radius.csv`, `summary.json` and optional plots into
/// `dir`; returns the summary.
pub fn write_run(trajectory: &Trajectory, cfg: &RunConfig, dir: &Path) -> Result<Value, CliError> {
    create_dir(dir)?;
    let mesh = trajectory.mesh();
    let mut index = String::from("step,t,radius_index,file\n");
    for s in &trajectory.snapshots {
        let name = output::snapshot_file_name(s.n);
        write_file(&dir.join(&name), &output::snapshot_csv(s, &mesh))?;
        index.push_str(&format!(
            "{},{:.16e},{},{}\n",
            s.n,
            s.time(trajectory.config.delta),
            s.radius_index,
            name
        ));
    }
    write_file(&dir.join("snapshots.csv"), &index)?;
    write_file(&dir.join("radius.csv"), &output::radius_csv(trajectory))?;
    let summary = output::summary_json(trajectory, &cfg.reference);
    write_file(
        &dir.join("summary.json"),
        &serde_json::to_string_pretty(&summary).expect("summary serialises"),
    )?;
    if cfg.output.plots {
        for f in Field::ALL {
            write_file(&dir.join(format!("{}.svg", f.name())), &render_svg(trajectory, f))?;
        }
    }
    Ok(summary)
}

/// `run`: simulate and write all artefacts.
pub fn cmd_run(cfg: &RunConfig, out: Option<&Path>, snapshots: Option<usize>, force: bool) -> Result<Value, CliError> {
    let mut cfg = cfg.clone();
    if let Some(n) = snapshots {
        cfg.output.snapshots = n.max(1);
    }
    let dir = out.map_or_else(|| cfg.output.directory.clone(), Path::to_path_buf);
    let trajectory = simulate(&cfg, run_options(&cfg, force))?;
    let summary = write_run(&trajectory, &cfg, &dir)?;
    match &trajectory.termination {
        Termination::Completed | Termination::HorizonReached { .. } => Ok(summary),
        other => Err(CliError::Run(
            serde_json::to_string(other).expect("termination serialises"),
        )),
    }
}

pub fn cmd_cfl(cfg: &RunConfig) -> Value {
    let report = validate_cfl(&cfg.model, &cfg.scheme);
    let mut v = serde_json::to_value(report).expect("report serialises");
    v["reference_comparison"] = output::cfl_comparison(&report, &cfg.reference);
    v
}

pub fn cmd_horizon(cfg: &RunConfig) -> Result<Value, CliError> {
    let h = existence_horizon(&cfg.model, &cfg.scheme)?;
    Ok(serde_json::to_value(h).expect("horizon serialises"))
}

/// Parses `a_hi=lo:hi:n;a_lo=lo:hi:n;m02=v1,v2`. Each axis is either an
/// inclusive range with `n` points or a comma separated list; omitted axes
/// take their defaults.
pub fn parse_grid(text: &str, cfg: &RunConfig) -> Result<HorizonGrid, CliError> {
    let mut a_hi = None;
    let mut a_lo = None;
    let mut m02 = None;
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| CliError::Grid(format!("`{part}` is not key=value")))?;
        let values = parse_axis(value.trim()).map_err(|e| CliError::Grid(format!("{key}: {e}")))?;
        match key.trim() {
            "a_hi" => a_hi = Some(values),
            "a_lo" => a_lo = Some(values),
            "m02" => m02 = Some(values),
            other => return Err(CliError::Grid(format!("unknown axis `{other}`"))),
        }
    }
    let m02 = m02.unwrap_or_else(|| vec![cfg.scheme.m02]);
    let lowest = m02.iter().copied().fold(f64::INFINITY, f64::min);
    let interior = |lo: f64, hi: f64| {
        let v = linspace(lo, hi, 52);
        v[1..51].to_vec()
    };
    Ok(HorizonGrid {
        a_star_hi: a_hi.unwrap_or_else(|| interior(lowest, 1.0)),
        a_star_lo: a_lo.unwrap_or_else(|| interior(0.0, cfg.scheme.alpha_thr)),
        m02,
    })
}

fn parse_axis(value: &str) -> Result<Vec<f64>, String> {
    let num = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("`{s}`: {e}"));
    let parts: Vec<&str> = value.split(':').collect();
    match parts.as_slice() {
        [lo, hi, n] => {
            let n: usize = n.trim().parse().map_err(|e| format!("`{n}`: {e}"))?;
            if n == 0 {
                return Err("point count must be positive".into());
            }
            Ok(linspace(num(lo)?, num(hi)?, n))
        }
        [list] => list.split(',').map(num).collect(),
        _ => Err(format!("`{value}` is neither lo:hi:n nor a list")),
    }
}

/// `sweep`: writes `horizon_sweep.csv` and returns a short summary.
pub fn cmd_sweep(cfg: &RunConfig, grid: &HorizonGrid, out: &Path) -> Result<Value, CliError> {
    let rows = sweep_horizon(&cfg.model, &cfg.scheme, grid);
    create_dir(out)?;
    let path = out.join("horizon_sweep.csv");
    write_file(&path, &output::sweep_csv(&rows))?;
    let defined = rows.iter().filter(|r| r.horizon.is_some()).count();
    let best = rows
        .iter()
        .filter_map(|r| r.horizon.map(|h| (r, h.t_star)))
        .fold(None::<(&tumor_core::orchestrator::HorizonRow, f64)>, |acc, (r, t)| match acc {
            Some((_, bt)) if bt >= t => acc,
            _ => Some((r, t)),
        });
    Ok(json!({
        "rows": rows.len(),
        "defined": defined,
        "file": path,
        "best": best.map(|(r, t)| json!({
            "a_star_hi": r.a_star_hi, "a_star_lo": r.a_star_lo, "m02": r.m02, "T_star": t,
        })),
    }))
}

/// `refine`: runs `levels` successively halved grids at the configured
/// final time.
pub fn cmd_refine(cfg: &RunConfig, levels: usize, force: bool) -> Result<RefinementReport, CliError> {
    let (a, c) = (cfg.alpha0.clone(), cfg.c0.clone());
    let a = &a;
    let c = &c;
    Ok(refine(
        &cfg.model,
        &cfg.scheme,
        move |x| a.eval(x),
        move |x| c.eval(x),
        levels.max(1),
        run_options(cfg, force),
    )?)
}
