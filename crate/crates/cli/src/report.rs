//! Serializable view of a verification run. Field order, float rendering,
//! and row order are all deterministic, so a fixed configuration, grid, and
//! check set always serializes to identical bytes.

use serde::Serialize;

use tcorona_core::verify::{self, CheckId, GridEntry, Report, VerifyConfig, VerifyOutcome};

#[derive(Debug, Serialize)]
pub struct ReportRow {
    /// Key of the result being checked, e.g. `adj-tvn` or `lap-ten-spectrum`.
    pub theorem: String,
    pub instance: String,
    pub mode: String,
    pub variant: String,
    pub tolerance: f64,
    pub seed: u64,
    pub deviations: Vec<f64>,
    pub max_deviation: f64,
    pub verdict: String,
    pub binding: bool,
    pub notes: String,
}

impl ReportRow {
    pub fn from_report(r: &Report) -> ReportRow {
        ReportRow {
            theorem: String::from(r.check.key()),
            instance: instance_key(&r.g1, &r.g2),
            mode: String::from(r.mode),
            variant: String::from(r.variant),
            tolerance: r.tolerance,
            seed: r.seed,
            deviations: r.deviations.clone(),
            max_deviation: r.max_deviation,
            verdict: String::from(r.verdict.key()),
            binding: r.binding,
            notes: r.notes.clone(),
        }
    }
}

pub fn instance_key(g1: &str, g2: &str) -> String {
    format!("{g1} with {g2}")
}

#[derive(Debug, Serialize)]
pub struct VerifyDocument {
    pub seed: u64,
    pub points: usize,
    pub checks: Vec<String>,
    pub grid: Vec<String>,
    pub binding_failures: usize,
    pub passed: bool,
    pub rows: Vec<ReportRow>,
}

pub fn document(
    cfg: &VerifyConfig,
    grid: &[GridEntry],
    checks: &[CheckId],
    outcome: &VerifyOutcome,
) -> VerifyDocument {
    VerifyDocument {
        seed: cfg.seed,
        points: cfg.points,
        checks: checks.iter().map(|c| String::from(c.key())).collect(),
        grid: grid.iter().map(|e| instance_key(&e.g1_key, &e.g2_key)).collect(),
        binding_failures: outcome.binding_failures,
        passed: outcome.passed(),
        rows: outcome.reports.iter().map(ReportRow::from_report).collect(),
    }
}

pub fn to_json(doc: &VerifyDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serialization cannot fail");
    s.push('\n');
    s
}

/// Runs the checks and serializes the outcome in one step.
pub fn verify_to_json(cfg: &VerifyConfig, grid: &[GridEntry], checks: &[CheckId]) -> String {
    let outcome = verify::run(cfg, grid, checks);
    to_json(&document(cfg, grid, checks, &outcome))
}
