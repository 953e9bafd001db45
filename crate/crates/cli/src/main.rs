use clap::{Parser, Subcommand};
use phimin_cli::{load_config, run, write_outputs, Command as RunCommand};
use std::path::PathBuf;
use std::process::ExitCode;

/// Numerical verification harness for the six-dimensional anisotropic
/// minimal graph construction: Euler–Lagrange residuals, ellipticity and
/// seam certificates, calibration and cone minimality, plus the exploratory
/// four-dimensional and (k, m)-family experiments.
#[derive(Parser)]
#[command(name = "phimin", version, about)]
struct Cli {
    /// JSON configuration file; omitted fields take their defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Seed for every randomized sweep (recorded in the report).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Override every primary sample count.
    #[arg(long, global = true)]
    samples: Option<usize>,

    /// Report output path (JSON; trajectory CSVs are written next to it).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Multiplies every absolute pass/fail tolerance.
    #[arg(long, global = true)]
    tolerance_scale: Option<f64>,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Euler–Lagrange residuals (graph, Legendre, parametric), wave and
    /// rotation identities, Legendre self-duality, printed fixed points.
    Verify,
    /// Ellipticity certificates for the integrand and its restriction, seam
    /// regularity, axis chart.
    Certify,
    /// Level-set criticality, rescaled-graph sweep, foliation, calibration.
    Cones,
    /// Exploratory: the four-dimensional cone ODE with the six-dimensional
    /// control (always exits 0).
    No4d,
    /// Exploratory: the k = 1, m = 4 curvature-ratio failure (always exits 0).
    Km,
    /// Every suite.
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Commands::Verify => RunCommand::Verify,
        Commands::Certify => RunCommand::Certify,
        Commands::Cones => RunCommand::Cones,
        Commands::No4d => RunCommand::No4d,
        Commands::Km => RunCommand::Km,
        Commands::All => RunCommand::All,
    };

    let mut config = match &cli.config {
        Some(path) => match load_config(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("configuration error: {e:#}");
                return ExitCode::from(2);
            }
        },
        None => Default::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(n) = cli.samples {
        config.override_samples(n);
    }
    if let Some(s) = cli.tolerance_scale {
        config.tolerance_scale = s;
    }
    if let Some(out) = &cli.out {
        config.out = Some(out.clone());
    }

    let output = match run(command, &config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("internal error: {e:#}");
            return ExitCode::from(2);
        }
    };

    for suite in &output.report.suites {
        let verdict = if suite.pass { "pass" } else { "FAIL" };
        let tag = if suite.exploratory { " (exploratory)" } else { "" };
        eprintln!("suite {:<8} {}{tag}  [{:.0} ms]", suite.name, verdict, suite.wall_ms);
        for note in &suite.notes {
            eprintln!("  note: {note}");
        }
    }

    match &config.out {
        Some(path) => {
            if let Err(e) = write_outputs(&output, path) {
                eprintln!("io error: {e:#}");
                return ExitCode::from(2);
            }
            eprintln!("report written to {}", path.display());
        }
        None => {
            println!("{}", output.report.to_json());
        }
    }

    if output.report.overall_pass {
        ExitCode::SUCCESS
    } else {
        let failing: Vec<&str> = output
            .report
            .suites
            .iter()
            .filter(|s| !s.exploratory && !s.pass)
            .map(|s| s.name.as_str())
            .collect();
        eprintln!("failing suites: {}", failing.join(", "));
        ExitCode::from(1)
    }
}
