//! Command-line front end: reads a JSON config describing skew-torsion
//! holonomy systems, verifies every algebraic identity and classification on
//! them, and writes a machine-readable report.
//!
//! Exit codes: 0 clean, 2 a check failed or a verdict was inconsistent,
//! 3 a tolerance decision was inconclusive, 4 the config was unusable.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use skewtor_core::config::{prepare, ConfigError, Overrides, VerifyConfig};
use skewtor_core::report::{run_verification, Report, Status};
use skewtor_core::CATALOG;

#[derive(Parser)]
#[command(name = "skewtor", version, about = "Verify skew-torsion holonomy systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the systems described in a config file.
    Verify {
        /// JSON config file.
        config: PathBuf,
        /// Write the JSON report to this file.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Print the JSON report to stdout instead of the summary.
        #[arg(long)]
        json: bool,
        /// Override both tolerance thresholds (rel and abs).
        #[arg(long)]
        tol: Option<f64>,
        /// Override the sampling seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the sample count for orbit-dimension estimates.
        #[arg(long)]
        samples: Option<usize>,
        /// Print nothing; communicate through the exit code only.
        #[arg(long)]
        quiet: bool,
    },
    /// List the built-in representation catalog.
    Catalog,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify {
            config,
            output,
            json,
            tol,
            seed,
            samples,
            quiet,
        } => run_verify(
            &config,
            output.as_deref(),
            json,
            Overrides { tol, seed, samples },
            quiet,
        ),
        Command::Catalog => {
            print_catalog();
            0
        }
    };
    ExitCode::from(code)
}

fn run_verify(
    config_path: &Path,
    output: Option<&Path>,
    json: bool,
    overrides: Overrides,
    quiet: bool,
) -> u8 {
    let report = match build_report(config_path, &overrides) {
        Ok(report) => report,
        Err(err) => {
            eprintln!("error: {err}");
            return 4;
        }
    };

    if let Some(path) = output {
        if let Err(err) = std::fs::write(path, report.to_json()) {
            eprintln!("error: cannot write report to '{}': {err}", path.display());
            return 4;
        }
    }
    if !quiet {
        if json {
            print!("{}", report.to_json());
        } else {
            print_summary(&report);
        }
    }
    report.exit_code() as u8
}

fn build_report(config_path: &Path, overrides: &Overrides) -> Result<Report, ConfigError> {
    let text = std::fs::read_to_string(config_path).map_err(|e| ConfigError::Unreadable {
        path: config_path.display().to_string(),
        message: e.to_string(),
    })?;
    let config = VerifyConfig::from_json(&text)?;
    let prepared = prepare(&config, overrides)?;
    Ok(run_verification(&prepared))
}

fn print_summary(report: &Report) {
    for sys in &report.systems {
        let status = match sys.status {
            Status::Ok => "ok",
            Status::CheckFailed => "FAILED",
            Status::Inconclusive => "inconclusive",
        };
        let verdict = sys
            .verdict
            .as_ref()
            .map(|v| v.branch.as_str())
            .unwrap_or("-");
        let extra = match (&sys.error, sys.form_space_dim) {
            (Some(e), _) => format!(" ({e})"),
            (None, Some(d)) => format!(" (form space dim {d})"),
            _ => String::new(),
        };
        println!(
            "{}: {} verdict={} dim={} algebra={}{}",
            sys.name, status, verdict, sys.dimension, sys.algebra_dim, extra
        );
        for check in sys.checks.iter().filter(|c| !c.pass) {
            println!(
                "  failed {} [{}]: residual {:.3e} > {:.3e}",
                check.name, check.operation, check.residual, check.threshold
            );
        }
    }
    let ok = report
        .systems
        .iter()
        .filter(|s| s.status == Status::Ok)
        .count();
    println!(
        "{} of {} systems ok (exit {})",
        ok,
        report.systems.len(),
        report.exit_code()
    );
}

fn print_catalog() {
    println!("name | parameter | ambient dim | algebra dim");
    for entry in &CATALOG {
        println!(
            "{} | {} | {} | {}",
            entry.name, entry.param_range, entry.ambient_formula, entry.algebra_formula
        );
    }
}
