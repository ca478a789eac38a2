use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use envyfree::commands::{self, EXIT_INPUT, EXIT_OK};
use envyfree::{BenchConfig, SolverKind};
use envyfree_core::{Distribution, GenSpec};

#[derive(Debug, Parser)]
#[command(name = "envyfree", version, about = "Envy-free perfect matching for budget x quality markets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance and write the outcome as JSON.
    Solve {
        /// Instance file (.json or .csv)
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, short, value_enum, default_value_t = SolverKind::Monge)]
        solver: SolverKind,
        /// Defaults to standard output
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Audit an outcome for envy-freeness and print the report.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        outcome: PathBuf,
        /// Defaults to 1e-9 * (1 + largest valuation)
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run every solver on an instance and compare revenues and welfare.
    Compare {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Generate a seeded instance.
    Gen {
        #[arg(long)]
        n: usize,
        /// uniform_real, uniform_int, tie_heavy or near_degenerate
        #[arg(long, default_value = "uniform_int")]
        dist: String,
        #[arg(long, default_value_t = 1.0)]
        low: f64,
        #[arg(long, default_value_t = 100.0)]
        high: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of grid values for tie_heavy
        #[arg(long, default_value_t = 2)]
        distinct: usize,
        /// .json or .csv; defaults to JSON on standard output
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Time solvers over growing instance sizes and write CSV records.
    Bench {
        /// Comma-separated sizes, e.g. 256,512,1024
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [SolverKind::Monge, SolverKind::Hungarian])]
        solvers: Vec<SolverKind>,
        /// Largest n for the cubic and exhaustive solvers
        #[arg(long, default_value_t = 1024)]
        cubic_cap: usize,
        /// Defaults to standard output
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn run(command: Command) -> Result<u8, commands::CliError> {
    let mut stdout = io::stdout().lock();
    let mut stderr = io::stderr();
    match command {
        Command::Solve { input, solver, output } => {
            commands::solve(&input, solver, output.as_deref(), &mut stdout)
        }
        Command::Verify { instance, outcome, tol } => commands::verify(&instance, &outcome, tol, &mut stdout),
        Command::Compare { instance, tol } => commands::compare(&instance, tol, &mut stdout),
        Command::Gen { n, dist, low, high, seed, distinct, output } => {
            let distribution: Distribution =
                dist.parse().map_err(|e| commands::CliError::Usage(format!("{e}: {dist}")))?;
            let spec = GenSpec::new(n, distribution, low, high, seed).with_distinct_values(distinct);
            commands::gen(&spec, output.as_deref(), &mut stdout, &mut stderr)
        }
        Command::Bench { sizes, reps, seed, solvers, cubic_cap, output } => {
            let cfg = BenchConfig { sizes, repetitions: reps, seed, solvers, cubic_cap };
            commands::bench(&cfg, output.as_deref(), &mut stdout)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    match run(cli.command) {
        Ok(code) => {
            let _ = io::stdout().flush();
            ExitCode::from(code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
