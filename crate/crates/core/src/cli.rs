//! Command-line front end. Exit codes: 0 success, 1 invalid scenario or run
//! failure, 2 usage error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::engine::{build_graph, Simulation};
use crate::io::{load_scenario, write_graph, write_outputs, OutputOptions};

#[derive(Debug, Parser)]
#[command(
    name = "floorflow",
    about = "Indoor airborne-infection simulator",
    disable_version_flag = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a scenario and report diagnostics.
    Validate { scenario: PathBuf },
    /// Build the navigation graph and write graph.csv.
    Navgraph {
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a scenario and write its outputs.
    Simulate {
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Record a frame every N steps (overrides the scenario).
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
        frame_every: Option<u64>,
        /// Random-visit seed (overrides the scenario).
        #[arg(long, value_name = "S")]
        seed: Option<u64>,
        /// Worker threads; results do not depend on it.
        #[arg(long, value_name = "T", env = "FLOORFLOW_THREADS", value_parser = clap::value_parser!(u64).range(1..))]
        threads: Option<u64>,
        /// Also write PGM heatmaps.
        #[arg(long)]
        pgm: bool,
    },
    /// Print the version.
    Version,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn execute(command: Command) -> Result<(), String> {
    match command {
        Command::Version => {
            println!("floorflow {}", env!("CARGO_PKG_VERSION"));
            Ok(())
        }
        Command::Validate { scenario } => {
            let loaded = load_scenario(&scenario).map_err(|e| e.to_string())?;
            for w in &loaded.warnings {
                eprintln!("warning: {w}");
            }
            let c = &loaded.config;
            println!(
                "ok: {} agents, {} navigation points, {} steps of {} s",
                c.agents.len(),
                c.nav_points.len(),
                c.step_count(),
                c.dt
            );
            Ok(())
        }
        Command::Navgraph { scenario, out } => {
            let loaded = load_scenario(&scenario).map_err(|e| e.to_string())?;
            let graph = build_graph(&loaded.config).map_err(|e| e.to_string())?;
            let p = write_graph(&graph, &out).map_err(|e| format!("{}: {e}", out.display()))?;
            println!(
                "{} vertices, {} edges -> {}",
                graph.len(),
                graph.edges().len(),
                p.display()
            );
            Ok(())
        }
        Command::Simulate {
            scenario,
            out,
            frame_every,
            seed,
            threads,
            pgm,
        } => {
            let loaded = load_scenario(&scenario).map_err(|e| e.to_string())?;
            for w in &loaded.warnings {
                log::warn!("{w}");
            }
            let mut config = loaded.config;
            if let Some(s) = seed {
                config.seed = s;
            }
            if let Some(n) = frame_every {
                config.output.frame_every = n;
            }
            let pgm = pgm || config.output.pgm;
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(t) = threads {
                pool = pool.num_threads(t as usize);
            }
            let pool = pool.build().map_err(|e| e.to_string())?;
            let result = pool
                .install(|| Simulation::new(config)?.run_with(|_| {}))
                .map_err(|e| e.to_string())?;
            let files = write_outputs(&result, &out, OutputOptions { pgm })
                .map_err(|e| format!("{}: {e}", out.display()))?;
            let last = result
                .frames
                .last()
                .expect("a run records at least one frame");
            println!(
                "{} frames, final average risk {:?}, {} newly infected; {} files in {}",
                result.frames.len(),
                last.average_risk,
                last.infected_count,
                files.len(),
                out.display()
            );
            Ok(())
        }
    }
}
