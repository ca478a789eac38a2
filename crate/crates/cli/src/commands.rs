//! Subcommand bodies, kept separate from argument parsing so they can be
//! driven from tests.
//!
//! Exit codes: 0 success, 1 bad input, 2 solver cannot handle the input,
//! 3 verification failed.

use std::io::Write;
use std::path::Path;

use envyfree_core::{audit_envy_free, generate, social_welfare, GenSpec, Instance};
use serde::Serialize;

use crate::bench::{self, BenchConfig};
use crate::formats::{self, AuditFile, FormatError, GenSpecFile};
use crate::solvers::SolverKind;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_CAPABILITY: u8 = 2;
pub const EXIT_VERIFICATION: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] FormatError),
    #[error("{0}")]
    Usage(String),
    #[error("solver {solver} failed: {source}")]
    Solver { solver: SolverKind, source: envyfree_core::Error },
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Usage(_) | CliError::Output(_) => EXIT_INPUT,
            CliError::Solver { .. } => EXIT_CAPABILITY,
        }
    }
}

fn run_solver(solver: SolverKind, inst: &Instance) -> Result<envyfree_core::Outcome, CliError> {
    solver.run(inst).map_err(|source| CliError::Solver { solver, source })
}

fn emit(text: &str, output: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(path) => formats::write_text(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// `solve`: write the outcome of `solver` as JSON.
pub fn solve(
    input: &Path,
    solver: SolverKind,
    output: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<u8, CliError> {
    let inst = formats::read_instance(input)?;
    let out = run_solver(solver, &inst)?;
    emit(&formats::outcome_to_json(&out), output, stdout)?;
    Ok(EXIT_OK)
}

/// `verify`: audit an outcome file against an instance and print the report.
pub fn verify(
    instance: &Path,
    outcome: &Path,
    tol: Option<f64>,
    stdout: &mut dyn Write,
) -> Result<u8, CliError> {
    let inst = formats::read_instance(instance)?;
    let out = formats::read_outcome(outcome)?;
    let tol = tol.unwrap_or_else(|| inst.default_tolerance());
    let report = audit_envy_free(&inst, &out, tol).map_err(FormatError::from)?;
    stdout.write_all(formats::to_json(&AuditFile::from(&report)).as_bytes())?;
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_VERIFICATION })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRow {
    pub solver: String,
    pub revenue: f64,
    pub welfare: f64,
    pub audit_passed: bool,
    pub revenue_matches_monge: bool,
    pub welfare_matches_monge: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub n: usize,
    pub tol: f64,
    pub rows: Vec<CompareRow>,
    pub revenues_agree: bool,
    pub welfares_agree: bool,
}

/// Runs every applicable solver on one instance and cross-checks them.
pub fn compare_instance(inst: &Instance, tol: Option<f64>) -> Result<CompareReport, CliError> {
    let tol = tol.unwrap_or_else(|| inst.default_tolerance());
    let mut solvers = vec![SolverKind::Monge, SolverKind::Hungarian];
    if inst.n() <= envyfree_core::oracles::MAX_BRUTE_FORCE_N {
        solvers.push(SolverKind::Brute);
    }
    let mut results = Vec::new();
    for solver in solvers {
        let out = run_solver(solver, inst)?;
        let audit = audit_envy_free(inst, &out, tol).map_err(|source| CliError::Solver { solver, source })?;
        results.push((solver, out.revenue, social_welfare(inst, &out.assignment), audit.all_passed()));
    }
    let (_, base_revenue, base_welfare, _) = results[0];
    let rows: Vec<CompareRow> = results
        .into_iter()
        .map(|(solver, revenue, welfare, audit_passed)| CompareRow {
            solver: solver.name().to_string(),
            revenue,
            welfare,
            audit_passed,
            revenue_matches_monge: (revenue - base_revenue).abs() <= tol,
            welfare_matches_monge: (welfare - base_welfare).abs() <= tol,
        })
        .collect();
    Ok(CompareReport {
        n: inst.n(),
        tol,
        revenues_agree: rows.iter().all(|r| r.revenue_matches_monge && r.audit_passed),
        welfares_agree: rows.iter().all(|r| r.welfare_matches_monge),
        rows,
    })
}

/// `compare`: exit 0 iff every solver's revenue agrees within `tol`.
pub fn compare(instance: &Path, tol: Option<f64>, stdout: &mut dyn Write) -> Result<u8, CliError> {
    let inst = formats::read_instance(instance)?;
    let report = compare_instance(&inst, tol)?;
    stdout.write_all(formats::to_json(&report).as_bytes())?;
    Ok(if report.revenues_agree { EXIT_OK } else { EXIT_VERIFICATION })
}

/// `gen`: write a generated instance and echo the spec.
///
/// With an output path the spec echo goes to `stdout`; without one the
/// instance JSON goes to `stdout` and the echo to `stderr`.
pub fn gen(
    spec: &GenSpec,
    output: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<u8, CliError> {
    let inst = generate(spec).map_err(FormatError::from)?;
    let echo = formats::to_json(&GenSpecFile::from(spec));
    match output {
        Some(path) => {
            formats::write_instance(&inst, path)?;
            stdout.write_all(echo.as_bytes())?;
        }
        None => {
            stdout.write_all(formats::instance_to_json(&inst).as_bytes())?;
            stderr.write_all(echo.as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

/// `bench`: time solvers, write CSV records, report log-log slopes.
pub fn bench(cfg: &BenchConfig, output: Option<&Path>, stdout: &mut dyn Write) -> Result<u8, CliError> {
    if cfg.sizes.is_empty() {
        return Err(CliError::Usage("bench needs at least one size".into()));
    }
    if cfg.sizes.contains(&0) {
        return Err(CliError::Usage("bench sizes must be at least 1".into()));
    }
    if cfg.repetitions == 0 {
        return Err(CliError::Usage("bench needs at least one repetition".into()));
    }
    let records = bench::run_bench(cfg).map_err(FormatError::from)?;
    let mut csv_bytes = Vec::new();
    bench::write_csv(&records, &mut csv_bytes).map_err(FormatError::from)?;
    match output {
        Some(path) => formats::write_text(path, &String::from_utf8_lossy(&csv_bytes))?,
        None => stdout.write_all(&csv_bytes)?,
    }
    let mut summary = String::new();
    for solver in &cfg.solvers {
        if let Some(slope) = bench::loglog_slope(&records, solver.name()) {
            summary.push_str(&format!("{}: log-log slope {:.3}\n", solver.name(), slope));
        }
    }
    if output.is_some() {
        stdout.write_all(summary.as_bytes())?;
    } else {
        eprint!("{summary}");
    }
    Ok(EXIT_OK)
}
