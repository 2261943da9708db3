//! `rrmo`: evaluate benchmarks, run GSEMO / NSGA-III, and check the oracles.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use rrmo_core::benchmarks::pareto_set_capped;
use rrmo_core::harness::write_csv;
use rrmo_core::nsga3::ReferenceLattice;
use rrmo_core::oracle::{default_instances, verify_operators, verify_suite, write_reports_csv};
use rrmo_core::{evaluate, pareto_set_size, run_experiment, BitString, ExperimentConfig, ProblemSpec};

#[derive(Parser)]
#[command(name = "rrmo", version, about = "Royal-road many-objective benchmarks with GSEMO and NSGA-III")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the fitness vector of a bit string.
    Eval { spec: ProblemSpec, bits: String },
    /// Print the constructive Pareto set, one string per line.
    Pareto {
        spec: ProblemSpec,
        /// Refuse to list more strings than this.
        #[arg(long, default_value_t = 10_000)]
        cap: u64,
    },
    /// Run a single seed of an experiment config and print its record.
    Run {
        config: PathBuf,
        /// Seed to run instead of the config's first seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run every seed of an experiment config and write one CSV row per run.
    Experiment {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Exit with status 1 unless every run covers the Pareto front.
        #[arg(long)]
        require_cover: bool,
    },
    /// Check the structural properties by exhaustive enumeration.
    Verify {
        /// Instances to check (repeatable); defaults to the standard small suite.
        #[arg(long)]
        spec: Vec<ProblemSpec>,
        /// Also run the Monte-Carlo operator checks.
        #[arg(long)]
        operators: bool,
        /// Write the reports as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Print the size of the reference lattice and, if small enough, its points.
    Refpoints {
        m: usize,
        p: u64,
        #[arg(long, default_value_t = 10_000)]
        cap: u128,
    },
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    /// A violated check or an uncovered run when coverage was required.
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let violation = matches!(
                e.downcast_ref::<rrmo_core::Error>(),
                Some(rrmo_core::Error::ProtectionViolation { .. } | rrmo_core::Error::CoverageLost { .. })
            );
            ExitCode::from(if violation { 1 } else { 2 })
        }
    }
}

fn execute(command: Command) -> Result<Status> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let status = match command {
        Command::Eval { spec, bits } => {
            let x: BitString = bits.parse()?;
            writeln!(out, "{}", evaluate(&x, &spec)?)?;
            Status::Ok
        }
        Command::Pareto { spec, cap } => {
            let size = pareto_set_size(&spec)?;
            if size > cap {
                bail!("pareto set of {spec} has {size} strings, above --cap {cap}");
            }
            for x in pareto_set_capped(&spec, cap)? {
                writeln!(out, "{x}")?;
            }
            Status::Ok
        }
        Command::Run { config, seed } => {
            let config = load(&config)?;
            config.validate()?;
            let seed = match seed {
                Some(s) => s,
                None => *config.seeds.expand().first().context("config has no seeds")?,
            };
            writeln!(out, "{}", config.run_one(seed)?)?;
            Status::Ok
        }
        Command::Experiment {
            config,
            out: path,
            require_cover,
        } => {
            let config = load(&config)?;
            let (records, stats) = run_experiment(&config)?;
            let file = File::create(&path).with_context(|| format!("cannot create {}", path.display()))?;
            write_csv(&records, BufWriter::new(file))?;
            writeln!(out, "{stats}")?;
            if require_cover && stats.covered < stats.runs {
                Status::Failed
            } else {
                Status::Ok
            }
        }
        Command::Verify { spec, operators, csv } => {
            let specs = if spec.is_empty() { default_instances() } else { spec };
            let mut reports = verify_suite(&specs)?;
            if operators {
                reports.extend(verify_operators(0)?);
            }
            for r in &reports {
                writeln!(out, "{r}")?;
                for v in &r.violations {
                    writeln!(out, "    {v}")?;
                }
            }
            if let Some(path) = csv {
                let file = File::create(&path).with_context(|| format!("cannot create {}", path.display()))?;
                write_reports_csv(&reports, BufWriter::new(file))?;
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            writeln!(out, "{} checks, {failed} failed", reports.len())?;
            if failed == 0 {
                Status::Ok
            } else {
                Status::Failed
            }
        }
        Command::Refpoints { m, p, cap } => {
            let lattice = ReferenceLattice::new(m, p)?;
            match lattice.size() {
                Some(size) => writeln!(out, "size {size}")?,
                None => writeln!(out, "size overflows u128")?,
            }
            if lattice.size().is_some_and(|s| s <= cap) {
                for point in lattice.points(cap)? {
                    let coords: Vec<String> = point.coords().iter().map(u32::to_string).collect();
                    writeln!(out, "{}", coords.join(" "))?;
                }
            }
            Status::Ok
        }
    };
    out.flush()?;
    Ok(status)
}

fn load(path: &PathBuf) -> Result<ExperimentConfig> {
    ExperimentConfig::load(path).with_context(|| format!("cannot load config {}", path.display()))
}
