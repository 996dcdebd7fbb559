use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use frenet_kappa::config::{parse_config, Mode};

#[derive(Parser)]
#[command(version, about = "Sampling-based planning along curved reference paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write its traces.
    Run {
        /// TOML config file, or the name of a bundled scenario.
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write one SVG frame per tick.
        #[arg(long)]
        svg: bool,
    },
}

fn main() -> ExitCode {
    let Command::Run {
        config,
        mode,
        seed,
        out,
        svg,
    } = Cli::parse().command;
    let mut cfg = match parse_config(&config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", config.display());
            return ExitCode::from(1);
        }
    };
    if let Some(m) = mode {
        cfg.mode = m;
    }
    if let Some(s) = seed {
        cfg.set_seed(s);
    }
    if let Some(o) = out {
        cfg.output_dir = o;
    }
    cfg.emit.svg_frames |= svg;

    match frenet_kappa::run::run(&cfg) {
        Ok(summary) => {
            for m in &summary.modes {
                println!(
                    "{:<9} {:?}: {} ticks, {} anomalous selections, {} anomalous candidates, station {:.2}/{:.2}",
                    m.mode,
                    m.outcome,
                    m.ticks,
                    m.anomalous_selected,
                    m.anomalous_candidates,
                    m.final_station,
                    m.goal_station
                );
            }
            println!("outputs in {}", cfg.output_dir.display());
            ExitCode::from(summary.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
