//! Machine-readable certification reports: one JSON document per run with a
//! stable schema, plus CSV trajectory sidecars for the exploratory
//! experiments.

use crate::config::RunConfig;
use serde::Serialize;
use std::collections::BTreeMap;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: String,
    /// Exploratory suites never affect the overall verdict.
    pub exploratory: bool,
    pub pass: bool,
    pub wall_ms: f64,
    pub samples_skipped: u64,
    pub metrics: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

impl SuiteResult {
    pub fn new(name: &str, exploratory: bool) -> Self {
        SuiteResult {
            name: name.to_string(),
            exploratory,
            pass: true,
            wall_ms: 0.0,
            samples_skipped: 0,
            metrics: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn metric(&mut self, key: &str, value: f64) {
        self.metrics.insert(key.to_string(), value);
    }

    /// Records a metric and folds the condition into the suite verdict.
    pub fn check(&mut self, key: &str, value: f64, ok: bool) {
        self.metric(key, value);
        if !ok {
            self.pass = false;
            self.notes.push(format!("check failed: {key} = {value:.6e}"));
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificationReport {
    pub schema_version: u32,
    pub artifact_version: String,
    pub command: String,
    pub generated_unix_ms: u64,
    pub config: RunConfig,
    pub suites: Vec<SuiteResult>,
    pub overall_pass: bool,
}

impl CertificationReport {
    pub fn assemble(command: &str, config: RunConfig, mut suites: Vec<SuiteResult>) -> Self {
        // Deterministic merge order regardless of execution order.
        suites.sort_by(|a, b| a.name.cmp(&b.name));
        let overall_pass = suites.iter().filter(|s| !s.exploratory).all(|s| s.pass);
        CertificationReport {
            schema_version: REPORT_SCHEMA_VERSION,
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            generated_unix_ms: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_millis() as u64)
                .unwrap_or(0),
            config,
            suites,
            overall_pass,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// JSON with the volatile fields (timestamp, wall clocks) zeroed;
    /// byte-identical across runs with the same config and seed.
    pub fn canonical_json(&self) -> String {
        let mut clone = self.clone();
        clone.generated_unix_ms = 0;
        for s in &mut clone.suites {
            s.wall_ms = 0.0;
        }
        serde_json::to_string_pretty(&clone).expect("report serialization cannot fail")
    }
}

/// CSV with a header row; floats printed with 17 significant digits.
pub fn write_csv(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
