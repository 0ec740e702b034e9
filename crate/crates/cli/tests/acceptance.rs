//! Acceptance suite. Runs every criterion, prints one line each and exits
//! nonzero if any fails.

use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tumor_core::diagnostics::Monitor;
use tumor_core::orchestrator::{
    best_over_a_hi, existence_horizon, linspace, sweep_horizon, validate_cfl, HorizonGrid,
    Termination, Trajectory,
};
use tumor_core::oxygen::{assemble_oxygen_system, solve_oxygen};
use tumor_core::velocity::{assemble_velocity_system, velocity_bounds};
use tumor_core::{solve_tridiagonal, CellField, Mesh, ModelParams, NodalField, SchemeConfig, Tridiagonal};
use tumor_oracles::{gauss_solve, oxygen_dense, velocity_dense, Dense};
use tumor_sim::output::{parse_radius_csv, parse_snapshot_csv};
use tumor_sim::{cmd_refine, parse_config, render_svg, run_options, simulate, write_run, Field, RunConfig};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn reference_config() -> RunConfig {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/reference.json");
    parse_config(&path).expect("shipped reference config parses")
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

struct Runs {
    short: Trajectory,
    short_time: Duration,
    long: Trajectory,
    long_time: Duration,
    long_dir: tempfile::TempDir,
    long_cfg: RunConfig,
}

fn short_and_long_runs() -> Runs {
    let base = reference_config();
    let mut short_cfg = base.clone();
    short_cfg.scheme.t_final = 5.0;
    let (short, short_time) = timed(|| simulate(&short_cfg, run_options(&short_cfg, false)).expect("T=5 run"));

    let long_cfg = base;
    let (long, long_time) = timed(|| simulate(&long_cfg, run_options(&long_cfg, false)).expect("T=50 run"));
    let long_dir = tempfile::tempdir().expect("temp dir");
    write_run(&long, &long_cfg, long_dir.path()).expect("write T=50 artefacts");
    Runs {
        short,
        short_time,
        long,
        long_time,
        long_dir,
        long_cfg,
    }
}

fn criterion_1(r: &Runs) -> Outcome {
    let worst = r.short.diagnostics.iter().map(|d| d.mass_residual).fold(0.0, f64::max);
    let steps = r.short.final_state.n;
    let ok = worst <= 1e-12
        && steps == 5000
        && r.short.mesh().cells() == 200
        && r.short_time < Duration::from_secs(10)
        && r.short.termination == Termination::Completed;
    outcome(
        ok,
        format!("max residual {worst:.3e} over {steps} steps, J = {}, {:.2?}", r.short.mesh().cells(), r.short_time),
    )
}

fn fuzz_oxygen(cases: usize) -> (usize, f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f78);
    let mut bad = 0;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..cases {
        let cells = rng.gen_range(1..=60);
        let jn = rng.gen_range(1..=cells);
        let h = rng.gen_range(0.005..0.5);
        let alpha: Vec<f64> = (0..cells).map(|_| rng.gen_range(0.0..0.999)).collect();
        let mut c_prev: Vec<f64> = (0..=cells).map(|_| rng.gen_range(0.0..=1.0)).collect();
        c_prev[jn..].iter_mut().for_each(|c| *c = 1.0);
        let params = ModelParams {
            q: rng.gen_range(0.0..20.0),
            q1hat: rng.gen_range(0.0..5.0),
            lambda: rng.gen_range(0.01..10.0),
            ..ModelParams::reference()
        };
        let cfg = SchemeConfig {
            h,
            delta: rng.gen_range(1e-5..1.0),
            ..SchemeConfig::reference()
        };
        match solve_oxygen(&CellField(alpha), &NodalField(c_prev), jn, &params, &cfg, &Mesh::new(h, cells)) {
            Ok(c) => {
                for &v in c.iter() {
                    lo = lo.min(v);
                    hi = hi.max(v);
                    if !(0.0..=1.0).contains(&v) {
                        bad += 1;
                    }
                }
            }
            Err(_) => bad += 1,
        }
    }
    (bad, lo, hi)
}

fn criterion_2(r: &Runs) -> Outcome {
    let (cmin, cmax) = r
        .short
        .diagnostics
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), d| (a.min(d.c_min), b.max(d.c_max)));
    let run_ok = cmin >= -1e-12 && cmax <= 1.0 + 1e-12 && r.short.summary.count(Monitor::OxygenRange) == 0;
    let (bad, lo, hi) = fuzz_oxygen(1000);
    outcome(
        run_ok && bad == 0,
        format!("run c in [{cmin:.6}, {cmax:.6}]; 1000 fuzzed solves, {bad} out of [0, 1] (observed [{lo:.3e}, {hi:.6}])"),
    )
}

fn criterion_3(r: &Runs) -> Outcome {
    let bound = velocity_bounds(&r.short.params, &r.short.config).u_max;
    let max_u = r.short.diagnostics.iter().map(|d| d.u_inf_norm).fold(0.0, f64::max);
    outcome(
        max_u <= 9.760 + 1e-6 && max_u <= bound,
        format!("max |u| = {max_u:.6} <= 9.760 (formula bound {bound:.6})"),
    )
}

fn criterion_4(r: &Runs) -> Outcome {
    let cfg = reference_config();
    let rep = validate_cfl(&cfg.model, &cfg.scheme);
    let summary: Value =
        serde_json::from_str(&std::fs::read_to_string(r.long_dir.path().join("summary.json")).unwrap()).unwrap();
    let cmp = &summary["cfl_reference_comparison"];
    let documented = cmp["c_cfl_reference"].as_f64() == Some(0.0361)
        && cmp["c_cfl_computed"].as_f64().is_some_and(|c| (c - rep.c_cfl).abs() < 1e-15);
    let ok = rep.feasible && (rep.ratio - 0.02).abs() < 1e-15 && (rep.c_cfl - 0.051229).abs() <= 1e-5 && documented;
    outcome(
        ok,
        format!(
            "feasible = {}, ratio = {}, C_CFL = {:.6} (published 0.0361 recorded in summary: {documented})",
            rep.feasible, rep.ratio, rep.c_cfl
        ),
    )
}

fn criterion_5() -> Outcome {
    let p = ModelParams::reference();
    let scenario = SchemeConfig {
        a_star_lo: 0.05,
        m01: 0.8,
        m02: 0.8,
        ..SchemeConfig::reference()
    };
    let hz = existence_horizon(&p, &scenario).expect("horizon defined");
    let magnitude = (1e-7..=1e-4).contains(&hz.t_star);

    let a_lo = linspace(0.002, 0.09, 45);
    let rows = sweep_horizon(
        &p,
        &scenario,
        &HorizonGrid {
            a_star_hi: linspace(0.705, 0.995, 59),
            a_star_lo: a_lo.clone(),
            m02: vec![0.7, 0.85],
        },
    );
    let at_repulsion = a_lo
        .iter()
        .all(|&lo| best_over_a_hi(&rows, lo, 0.7).is_some_and(|r| (r.a_star_hi - p.alpha_r).abs() < 1e-9));
    let interior = a_lo.iter().all(|&lo| {
        best_over_a_hi(&rows, lo, 0.85).is_some_and(|r| r.a_star_hi > 0.85 && r.a_star_hi < 0.995)
    });
    let increasing = [0.7, 0.85].iter().all(|&m02| {
        let best: Vec<f64> = a_lo
            .iter()
            .map(|&lo| best_over_a_hi(&rows, lo, m02).unwrap().horizon.unwrap().t_star)
            .collect();
        best.windows(2).all(|w| w[1] >= w[0])
    });

    // where the increase stops on the full interval, for the record
    let fine_lo = linspace(0.001, 0.099, 99);
    let fine = sweep_horizon(
        &p,
        &scenario,
        &HorizonGrid {
            a_star_hi: linspace(0.705, 0.995, 59),
            a_star_lo: fine_lo.clone(),
            m02: vec![0.7],
        },
    );
    let best: Vec<f64> = fine_lo
        .iter()
        .map(|&lo| best_over_a_hi(&fine, lo, 0.7).unwrap().horizon.unwrap().t_star)
        .collect();
    let turn = best.windows(2).position(|w| w[1] < w[0]).map(|i| fine_lo[i]);

    let grid = HorizonGrid {
        a_star_hi: linspace(0.801, 0.999, 50),
        a_star_lo: linspace(0.002, 0.098, 50),
        m02: vec![0.8],
    };
    let (big, elapsed) = timed(|| sweep_horizon(&p, &scenario, &grid));
    let fast = big.len() == 2500 && elapsed < Duration::from_secs(5);

    outcome(
        magnitude && at_repulsion && interior && increasing && fast,
        format!(
            "T_star = {:.3e}; argmax at alphaR for m02 < alphaR: {at_repulsion}; interior argmax for m02 > alphaR: {interior}; \
             best T_star nondecreasing in a_* on [0.002, 0.09]: {increasing} (first decrease at a_* = {}); 50x50 grid {elapsed:.2?}",
            hz.t_star,
            turn.map_or("none".to_string(), |a| format!("{a:.3}")),
        ),
    )
}

fn criterion_6(r: &Runs) -> Outcome {
    let dir = r.long_dir.path();
    let radius = parse_radius_csv(&std::fs::read_to_string(dir.join("radius.csv")).unwrap()).unwrap();
    let after_one: Vec<_> = radius.iter().filter(|(t, _)| *t >= 1.0 - 1e-12).collect();
    let nondecreasing = after_one.windows(2).all(|w| w[1].1 >= w[0].1);
    let ell1 = after_one.first().unwrap().1;
    let ell50 = radius.last().unwrap().1;

    let h = r.long_cfg.scheme.h;
    let t_final = r.long_cfg.scheme.t_final;
    let mut c_monotone = true;
    let mut u_signs = true;
    let mut late = 0;
    for s in &r.long.snapshots {
        let data = parse_snapshot_csv(
            &std::fs::read_to_string(dir.join(tumor_sim::output::snapshot_file_name(s.n))).unwrap(),
        )
        .unwrap();
        let jn = s.radius_index;
        c_monotone &= data.c[..=jn].windows(2).all(|w| w[1] >= w[0] - 1e-9) && data.c[jn] == 1.0;
        if s.n as f64 * r.long_cfg.scheme.delta >= 0.5 * t_final {
            late += 1;
            u_signs &= data.u[1] < 0.0 && data.u[jn] > 0.0;
        }
    }
    let snapshots = r.long.snapshots.len();
    let svg = render_svg(&r.long, Field::C);
    let ok = nondecreasing
        && ell50 > ell1
        && c_monotone
        && u_signs
        && late > 0
        && r.long_time < Duration::from_secs(60)
        && r.long.termination == Termination::Completed
        && svg.matches("<polyline").count() == snapshots;
    outcome(
        ok,
        format!(
            "ell(1) = {ell1:.2}, ell(50) = {ell50:.2}, radius nondecreasing for t >= 1: {nondecreasing}; \
             c nondecreasing in x: {c_monotone}; u < 0 near 0 and > 0 at ell in {late} late snapshots: {u_signs}; \
             {snapshots} snapshots, {:.2?}, h = {h}",
            r.long_time
        ),
    )
}

fn random_tridiagonal(rng: &mut ChaCha8Rng, n: usize) -> Tridiagonal {
    Tridiagonal {
        lower: (0..n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        diag: (0..n).map(|_| rng.gen_range(2.1..4.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 }).collect(),
        upper: (0..n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect(),
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut solver_err: f64 = 0.0;
    for n in 1..=50 {
        for _ in 0..4 {
            let t = random_tridiagonal(&mut rng, n);
            let rhs: Vec<f64> = (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect();
            let mut dense = Dense::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    dense.add(i, j, t.get(i, j));
                }
            }
            let got = solve_tridiagonal(&t.lower, &t.diag, &t.upper, &rhs).unwrap();
            let want = gauss_solve(&dense, &rhs);
            let num: f64 = got.iter().zip(&want).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            let den: f64 = want.iter().map(|b| b * b).sum::<f64>().sqrt();
            solver_err = solver_err.max(num / den);
        }
    }

    let mut assembly_err: f64 = 0.0;
    for _ in 0..200 {
        let h = rng.gen_range(0.01..1.0);
        let mesh = Mesh::new(h, 6);
        let jn = rng.gen_range(1..=6);
        let alpha: Vec<f64> = (0..6).map(|_| rng.gen_range(0.01..0.98)).collect();
        let params = ModelParams {
            k: rng.gen_range(0.1..5.0),
            mu: rng.gen_range(0.1..5.0),
            q: rng.gen_range(0.0..5.0),
            q1hat: rng.gen_range(0.0..3.0),
            lambda: rng.gen_range(0.1..3.0),
            ..ModelParams::reference()
        };
        let cfg = SchemeConfig {
            h,
            delta: rng.gen_range(1e-4..0.5),
            ..SchemeConfig::reference()
        };
        let alpha = CellField(alpha);
        let vs = assemble_velocity_system(&alpha, jn, &params, &mesh).unwrap();
        let (vd, vl) = velocity_dense(&alpha, jn, params.k, params.mu, params.alpha_r, h);
        let mut c_prev: Vec<f64> = (0..7).map(|_| rng.gen_range(0.0..=1.0)).collect();
        c_prev[jn..].iter_mut().for_each(|c| *c = 1.0);
        let os = assemble_oxygen_system(&alpha, &NodalField(c_prev.clone()), jn, &params, &cfg, &mesh).unwrap();
        let om = os.matrix();
        let orhs = os.rhs(&c_prev[..jn]);
        let (od, ol) = oxygen_dense(&alpha, &c_prev, jn, params.lambda, params.q, params.q1hat, cfg.delta, h);
        for i in 0..jn {
            let vs_scale = vd.get(i, i).abs().max(1.0);
            let os_scale = od.get(i, i).abs().max(1.0);
            for j in 0..jn {
                assembly_err = assembly_err.max((vs.matrix.get(i, j) - vd.get(i, j)).abs() / vs_scale);
                assembly_err = assembly_err.max((om.get(i, j) - od.get(i, j)).abs() / os_scale);
            }
            assembly_err = assembly_err.max((vs.load[i] - vl[i]).abs() / vl[i].abs().max(1.0));
            assembly_err = assembly_err.max((orhs[i] - ol[i]).abs() / ol[i].abs().max(1.0));
        }
    }
    outcome(
        solver_err <= 1e-12 && assembly_err <= 1e-13,
        format!("solver vs dense {solver_err:.2e} (200 systems, n <= 50); assembly vs element oracle {assembly_err:.2e} (200 six-cell instances)"),
    )
}

fn criterion_8_and_9(runs: &Runs) -> (Outcome, Outcome) {
    let mut cfg = reference_config();
    cfg.scheme.t_final = 1.0;
    let (report, elapsed) = timed(|| cmd_refine(&cfg, 3, false).expect("refinement runs"));
    let ratios = &report.difference_ratios;
    let decreasing = !ratios.is_empty() && ratios.iter().all(|&r| r <= 1.0);
    let within = |v: Vec<f64>| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (hi / lo, hi <= 1.5 * lo)
    };
    let (space_spread, space_ok) = within(report.levels.iter().map(|l| l.alpha_space_bv).collect());
    let (time_spread, time_ok) = within(report.levels.iter().map(|l| l.temporal_bv).collect());
    let c8 = outcome(
        decreasing && space_ok && time_ok,
        format!(
            "L1 differences {:?}, ratio {:?}; spatial BV spread {space_spread:.3}x, temporal BV spread {time_spread:.3}x ({elapsed:.2?})",
            report.l1_differences.iter().map(|d| format!("{d:.3e}")).collect::<Vec<_>>(),
            ratios.iter().map(|r| format!("{r:.3}")).collect::<Vec<_>>(),
        ),
    );

    let levels_ok = report.levels.iter().all(|l| l.radius_decomposition_passed);
    let feasible = [&runs.short, &runs.long].iter().all(|t| t.cfl.feasible);
    let c9 = outcome(
        feasible
            && runs.short.summary.radius_decomposition.passed
            && runs.long.summary.radius_decomposition.passed
            && levels_ok,
        format!(
            "T=5 run: {}, T=50 run: {}, refinement levels: {levels_ok}",
            runs.short.summary.radius_decomposition.passed, runs.long.summary.radius_decomposition.passed
        ),
    );
    (c8, c9)
}

fn main() {
    let names = [
        "discrete mass conservation",
        "discrete maximum principle",
        "velocity bound",
        "CFL report",
        "existence horizon and sweep shapes",
        "radius growth, oxygen and velocity profiles",
        "oracle equivalence",
        "refinement consistency",
        "radius decomposition",
    ];
    let runs = short_and_long_runs();
    let (c8, c9) = criterion_8_and_9(&runs);
    let results = [
        criterion_1(&runs),
        criterion_2(&runs),
        criterion_3(&runs),
        criterion_4(&runs),
        criterion_5(),
        criterion_6(&runs),
        criterion_7(),
        c8,
        c9,
    ];
    let mut failed = 0;
    for (i, (name, r)) in names.iter().zip(&results).enumerate() {
        println!("[{}] {}. {name}: {}", if r.passed { "PASS" } else { "FAIL" }, i + 1, r.detail);
        failed += usize::from(!r.passed);
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
