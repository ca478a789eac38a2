//! On-disk formats.
//!
//! Instances are JSON (`{"budgets":[...],"qualities":[...]}`) or CSV with a
//! `budget,quality` header. Outcomes and audit reports are JSON with a fixed
//! field order; floats use the shortest representation that round-trips.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use envyfree_core::{Assignment, AuditReport, GenSpec, Instance, Outcome, PriceVector, ViolationKind};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("CSV header must be `budget,quality`, found `{0}`")]
    CsvHeader(String),
    #[error(transparent)]
    Invalid(#[from] envyfree_core::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub budgets: Vec<f64>,
    pub qualities: Vec<f64>,
}

impl From<&Instance> for InstanceFile {
    fn from(inst: &Instance) -> Self {
        InstanceFile { budgets: inst.budgets().to_vec(), qualities: inst.qualities().to_vec() }
    }
}

impl TryFrom<InstanceFile> for Instance {
    type Error = envyfree_core::Error;

    fn try_from(file: InstanceFile) -> Result<Self, Self::Error> {
        Instance::new(file.budgets, file.qualities)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeFile {
    pub assignment: Vec<usize>,
    pub prices: Vec<f64>,
    pub revenue: f64,
    pub surpluses: Vec<f64>,
}

impl From<&Outcome> for OutcomeFile {
    fn from(out: &Outcome) -> Self {
        OutcomeFile {
            assignment: out.assignment.item_of().to_vec(),
            prices: out.prices.as_slice().to_vec(),
            revenue: out.revenue,
            surpluses: out.surpluses.clone(),
        }
    }
}

impl From<OutcomeFile> for Outcome {
    /// Kept as-is, even when the assignment is not a permutation, so the
    /// audit can report it.
    fn from(file: OutcomeFile) -> Self {
        Outcome {
            assignment: Assignment::from_raw(file.assignment),
            prices: PriceVector::new(file.prices),
            revenue: file.revenue,
            surpluses: file.surpluses,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationEntry {
    pub buyer: usize,
    pub item: usize,
    pub kind: String,
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditFile {
    pub envy_free: bool,
    pub individually_rational: bool,
    pub perfect: bool,
    pub revenue_consistent: bool,
    pub worst_violation: f64,
    pub violating_pairs: Vec<ViolationEntry>,
}

impl From<&AuditReport> for AuditFile {
    fn from(report: &AuditReport) -> Self {
        AuditFile {
            envy_free: report.envy_free,
            individually_rational: report.individually_rational,
            perfect: report.perfect,
            revenue_consistent: report.revenue_consistent,
            worst_violation: report.worst_violation,
            violating_pairs: report
                .violating_pairs
                .iter()
                .map(|v| ViolationEntry {
                    buyer: v.buyer,
                    item: v.item,
                    kind: match v.kind {
                        ViolationKind::Envy => "envy".into(),
                        ViolationKind::Irrational => "irrational".into(),
                    },
                    slack: v.slack,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpecFile {
    pub n: usize,
    pub distribution: String,
    pub low: f64,
    pub high: f64,
    pub seed: u64,
    pub distinct_values: usize,
}

impl From<&GenSpec> for GenSpecFile {
    fn from(spec: &GenSpec) -> Self {
        GenSpecFile {
            n: spec.n,
            distribution: spec.distribution.as_str().to_string(),
            low: spec.low,
            high: spec.high,
            seed: spec.seed,
            distinct_values: spec.distinct_values,
        }
    }
}

impl TryFrom<GenSpecFile> for GenSpec {
    type Error = envyfree_core::Error;

    fn try_from(file: GenSpecFile) -> Result<Self, Self::Error> {
        let spec = GenSpec {
            n: file.n,
            distribution: file.distribution.parse()?,
            low: file.low,
            high: file.high,
            seed: file.seed,
            distinct_values: file.distinct_values,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Pretty JSON followed by a newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn parse_instance_json(text: &str) -> Result<Instance, FormatError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    Ok(Instance::try_from(file)?)
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    budget: f64,
    quality: f64,
}

pub fn parse_instance_csv<R: Read>(reader: R) -> Result<Instance, FormatError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["budget", "quality"] {
        return Err(FormatError::CsvHeader(headers.iter().collect::<Vec<_>>().join(",")));
    }
    let mut budgets = Vec::new();
    let mut qualities = Vec::new();
    for row in rdr.deserialize() {
        let row: CsvRow = row?;
        budgets.push(row.budget);
        qualities.push(row.quality);
    }
    Ok(Instance::new(budgets, qualities)?)
}

pub fn write_instance_csv<W: Write>(inst: &Instance, writer: W) -> Result<(), FormatError> {
    let mut wtr = csv::Writer::from_writer(writer);
    for (&budget, &quality) in inst.budgets().iter().zip(inst.qualities()) {
        wtr.serialize(CsvRow { budget, quality })?;
    }
    wtr.flush().map_err(|source| FormatError::Io { path: "<csv>".into(), source })?;
    Ok(())
}

pub fn instance_to_json(inst: &Instance) -> String {
    to_json(&InstanceFile::from(inst))
}

pub fn outcome_to_json(out: &Outcome) -> String {
    to_json(&OutcomeFile::from(out))
}

pub fn parse_outcome_json(text: &str) -> Result<Outcome, FormatError> {
    let file: OutcomeFile = serde_json::from_str(text)?;
    Ok(file.into())
}

fn read_text(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|ext| ext.eq_ignore_ascii_case("csv"))
}

/// Reads an instance, choosing CSV for `.csv` files and JSON otherwise.
pub fn read_instance(path: &Path) -> Result<Instance, FormatError> {
    let text = read_text(path)?;
    if is_csv(path) {
        parse_instance_csv(text.as_bytes())
    } else {
        parse_instance_json(&text)
    }
}

pub fn read_outcome(path: &Path) -> Result<Outcome, FormatError> {
    parse_outcome_json(&read_text(path)?)
}

/// Writes an instance, as CSV for `.csv` paths and JSON otherwise.
pub fn write_instance(inst: &Instance, path: &Path) -> Result<(), FormatError> {
    let io_err = |source| FormatError::Io { path: path.display().to_string(), source };
    if is_csv(path) {
        let file = fs::File::create(path).map_err(io_err)?;
        write_instance_csv(inst, file)
    } else {
        fs::write(path, instance_to_json(inst)).map_err(io_err)
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<(), FormatError> {
    fs::write(path, text).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}
