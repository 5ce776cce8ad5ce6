use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::grid::PhysicalConstants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

/// One judged quantity: a measured residual and the tolerance it was held to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub passed: bool,
}

impl CheckResult {
    /// Passes when `residual ≤ tolerance` (NaN fails).
    pub fn at_most(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
            comparison: Comparison::AtMost,
            passed: residual <= tolerance,
        }
    }

    /// Passes when `residual ≥ tolerance` (NaN fails).
    pub fn at_least(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
            comparison: Comparison::AtLeast,
            passed: residual >= tolerance,
        }
    }

    pub fn summary_line(&self) -> String {
        let op = match self.comparison {
            Comparison::AtMost => "<=",
            Comparison::AtLeast => ">=",
        };
        format!(
            "{} {}: {:e} {op} {:e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.residual,
            self.tolerance
        )
    }
}

/// Column-major labels with row-major numeric samples.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SampleTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl SampleTable {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub label: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub scenario: String,
    pub kind: String,
    pub seed: u64,
    pub constants: PhysicalConstants,
    /// Echo of every scenario key as `section.key`.
    pub settings: BTreeMap<String, String>,
    pub checks: Vec<CheckResult>,
    pub samples: SampleTable,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub timings: Vec<Timing>,
}

impl RunReport {
    pub fn new(scenario: &str, kind: &str, seed: u64, constants: PhysicalConstants) -> Self {
        Self {
            scenario: scenario.to_string(),
            kind: kind.to_string(),
            seed,
            constants,
            settings: BTreeMap::new(),
            checks: Vec::new(),
            samples: SampleTable::default(),
            passed: true,
            timings: Vec::new(),
        }
    }

    /// Sorts checks by name and recomputes the aggregate verdict.
    pub fn finalize(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self.passed = self.checks.iter().all(|c| c.passed);
    }

    pub fn without_timings(&self) -> Self {
        Self {
            timings: Vec::new(),
            ..self.clone()
        }
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?} (expected csv or json)")),
        }
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn format_f64(x: f64) -> String {
    format!("{x:?}")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One row per sample under a header row. Reports without a sample table
/// (verification runs) list their checks instead.
pub fn render_csv(report: &RunReport) -> String {
    let mut out = String::new();
    if report.samples.columns.is_empty() {
        out.push_str("check,residual,tolerance,comparison,passed\n");
        for c in &report.checks {
            let op = match c.comparison {
                Comparison::AtMost => "<=",
                Comparison::AtLeast => ">=",
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                csv_field(&c.name),
                format_f64(c.residual),
                format_f64(c.tolerance),
                op,
                c.passed
            );
        }
        return out;
    }
    let header: Vec<String> = report
        .samples
        .columns
        .iter()
        .map(|c| csv_field(c))
        .collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in &report.samples.rows {
        let cells: Vec<String> = row.iter().map(|&x| format_f64(x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn render_json(report: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn render(report: &RunReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => render_csv(report),
        OutputFormat::Json => render_json(report),
    }
}

/// Writes the rendered report to `path`, or to stdout when `path` is `None`.
pub fn emit(report: &RunReport, format: OutputFormat, path: Option<&Path>) -> std::io::Result<()> {
    let text = render(report, format);
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()
        }
    }
}

pub fn parse_json(text: &str) -> serde_json::Result<RunReport> {
    serde_json::from_str(text)
}
