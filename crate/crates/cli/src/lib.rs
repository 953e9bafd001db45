//! Harness library behind the `phimin` binary: configuration, suites, and
//! report assembly. Kept as a library so integration tests drive the exact
//! code paths the CLI runs.

pub mod config;
pub mod report;
pub mod suites;

use anyhow::{Context, Result};
use config::RunConfig;
use report::{write_csv, CertificationReport};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Verify,
    Certify,
    Cones,
    No4d,
    Km,
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Certify => "certify",
            Command::Cones => "cones",
            Command::No4d => "no4d",
            Command::Km => "km",
            Command::All => "all",
        }
    }
}

pub struct RunOutput {
    pub report: CertificationReport,
    /// (file suffix, csv body) sidecars for trajectory data.
    pub sidecars: Vec<(String, String)>,
}

/// Runs the suites selected by the command and assembles the report.
pub fn run(command: Command, config: &RunConfig) -> Result<RunOutput> {
    let mut suites = Vec::new();
    let mut sidecars = Vec::new();
    if matches!(command, Command::Verify | Command::All) {
        suites.push(suites::run_verify(config)?);
    }
    if matches!(command, Command::Certify | Command::All) {
        suites.push(suites::run_certify(config)?);
    }
    if matches!(command, Command::Cones | Command::All) {
        suites.push(suites::run_cones(config)?);
    }
    if matches!(command, Command::No4d | Command::All) {
        let out = suites::run_no4d(config)?;
        sidecars.push(("no4d_k1.csv".to_string(), ode_csv(&out.four_dim)));
        sidecars.push(("no4d_k2.csv".to_string(), ode_csv(&out.control)));
        suites.push(out.suite);
    }
    if matches!(command, Command::Km | Command::All) {
        let out = suites::run_km(config)?;
        sidecars.push(("km_rays.csv".to_string(), km_csv(&out.report)));
        suites.push(out.suite);
    }
    let report = CertificationReport::assemble(command.name(), config.clone(), suites);
    Ok(RunOutput { report, sidecars })
}

fn ode_csv(report: &phimin_core::no4d::OdeReport) -> String {
    let rows: Vec<Vec<f64>> = report
        .trajectory
        .iter()
        .map(|r| {
            vec![
                r.t,
                r.s,
                r.h,
                r.dh,
                r.ddh,
                r.lambda_angular_p,
                r.lambda_angular_q,
                r.lambda_meridian,
            ]
        })
        .collect();
    write_csv(
        &["t", "s", "h", "dh", "ddh", "lambda_angular_p", "lambda_angular_q", "lambda_meridian"],
        &rows,
    )
}

fn km_csv(report: &phimin_core::kmfail::KmFailureReport) -> String {
    let mut rows = Vec::new();
    for ray in &report.rays {
        for row in &ray.rows {
            rows.push(vec![ray.ray_x, row.y, row.kappa_max_abs, row.kappa_min_abs, row.ratio]);
        }
    }
    write_csv(&["ray_x", "y", "kappa_max_abs", "kappa_min_abs", "ratio"], &rows)
}

/// Writes the JSON report and CSV sidecars next to it; sidecar names get the
/// report stem as a prefix.
pub fn write_outputs(output: &RunOutput, out_path: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    if let Some(parent) = out_path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .with_context(|| format!("creating {}", parent.display()))?;
        }
    }
    std::fs::write(out_path, output.report.to_json())
        .with_context(|| format!("writing {}", out_path.display()))?;
    written.push(out_path.to_path_buf());
    let stem = out_path
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "report".to_string());
    for (suffix, body) in &output.sidecars {
        let name = format!("{stem}_{suffix}");
        let path = out_path.with_file_name(name);
        std::fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
    }
    Ok(written)
}

/// Loads a JSON config file; missing fields take their defaults.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let body = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let config: RunConfig =
        serde_json::from_str(&body).with_context(|| format!("parsing config {}", path.display()))?;
    Ok(config)
}
