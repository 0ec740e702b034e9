use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;
use tumor_sim::{
    cmd_cfl, cmd_horizon, cmd_refine, cmd_run, cmd_sweep, parse_config, parse_grid, CliError,
};

#[derive(Parser)]
#[command(name = "tumor-sim", version, about = "Threshold tumour growth simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate and write snapshots, radius.csv, summary.json and plots.
    Run {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        snapshots: Option<usize>,
        /// Run even if the step-size window is violated; monitors only log.
        #[arg(long)]
        force: bool,
    },
    /// Print the step-size window report.
    Cfl { config: PathBuf },
    /// Print the existence horizon.
    Horizon { config: PathBuf },
    /// Tabulate the existence horizon over a parameter grid.
    Sweep {
        config: PathBuf,
        /// e.g. "a_hi=0.81:0.99:50;a_lo=0.002:0.098:50;m02=0.8"
        #[arg(long, default_value = "")]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare runs on successively halved grids.
    Refine {
        config: PathBuf,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
}

fn print(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("JSON output");
    // a closed pipe downstream is not an error of ours
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run {
            config,
            out,
            snapshots,
            force,
        } => {
            let cfg = parse_config(&config)?;
            let summary = cmd_run(&cfg, out.as_deref(), snapshots, force)?;
            print(&summary);
        }
        Command::Cfl { config } => print(&cmd_cfl(&parse_config(&config)?)),
        Command::Horizon { config } => print(&cmd_horizon(&parse_config(&config)?)?),
        Command::Sweep { config, grid, out } => {
            let cfg = parse_config(&config)?;
            let grid = parse_grid(&grid, &cfg)?;
            let dir = out.unwrap_or_else(|| cfg.output.directory.clone());
            print(&cmd_sweep(&cfg, &grid, &dir)?);
        }
        Command::Refine {
            config,
            levels,
            out,
            force,
        } => {
            let cfg = parse_config(&config)?;
            let report = cmd_refine(&cfg, levels, force)?;
            let v = serde_json::to_value(&report).expect("report serialises");
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir)
                    .and_then(|_| std::fs::write(dir.join("refine.json"), v.to_string()))
                    .map_err(|source| CliError::Io { path: dir, source })?;
            }
            print(&v);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
