//! Machine-readable verification reports.
//!
//! One report per run, one entry per verified system. Every boolean check
//! carries the numeric residual it was derived from, the threshold it was
//! compared against, and the operation that produced it. With a fixed seed
//! the report is byte-identical between runs except for the wall-time
//! fields.

use std::time::Instant;

use serde::Serialize;

use crate::catalog::solve_form_space;
use crate::config::{PreparedEntry, PreparedRun, TorsionSource};
use crate::error::Error;
use crate::exterior::ThreeForm;
use crate::holonomy::{
    bianchi_residual, classify, curvature_raw, derived_form, torsion_scalar, ClassifyOptions,
    SkewTorsionSystem, Verdict,
};
use crate::numerics::Tolerance;

pub const SCHEMA_VERSION: u32 = 1;

/// Outcome of verifying one system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// All checks passed and the verdict is consistent.
    Ok,
    /// At least one check failed or the verdict is inconsistent.
    CheckFailed,
    /// A rank or defect decision landed in the ambiguous tolerance band.
    Inconclusive,
}

/// One named residual with its pass/fail decision.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    /// The operation that produced the residual.
    pub operation: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, operation: &str, residual: f64, threshold: f64) -> Self {
        Check {
            name: name.to_string(),
            operation: operation.to_string(),
            residual,
            threshold,
            pass: residual <= threshold,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SystemReport {
    pub name: String,
    pub dimension: usize,
    pub algebra_dim: usize,
    /// Dimension of the admissible form space; present when the torsion was
    /// solved for rather than given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form_space_dim: Option<usize>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    pub checks: Vec<Check>,
    pub wall_time_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub toolkit_version: String,
    pub tolerance: Tolerance,
    pub seed: u64,
    pub samples: usize,
    pub systems: Vec<SystemReport>,
    pub wall_time_ms: f64,
}

impl Report {
    /// 0 when clean, 2 when a check failed, 3 when only inconclusive
    /// tolerance decisions remain.
    pub fn exit_code(&self) -> i32 {
        if self
            .systems
            .iter()
            .any(|s| s.status == Status::CheckFailed)
        {
            2
        } else if self
            .systems
            .iter()
            .any(|s| s.status == Status::Inconclusive)
        {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

fn verify_system(
    name: &str,
    system: &SkewTorsionSystem,
    entry: &PreparedEntry,
    form_space_dim: Option<usize>,
) -> SystemReport {
    let start = Instant::now();
    let tol = &entry.tolerance;
    let mut checks = Vec::new();

    let torsion_norm = system.torsion().norm();
    let quadratic_scale = 1.0 + torsion_norm * torsion_norm;

    checks.push(Check::new(
        "torsion_in_algebra",
        "system.membership",
        system.membership_residual(),
        tol.abs * (1.0 + torsion_norm),
    ));

    let derived = derived_form(system);
    checks.push(Check::new(
        "derived_form_antisymmetry",
        "holonomy.omega",
        derived.antisymmetry_defect,
        10.0 * tol.abs * quadratic_scale,
    ));
    checks.push(Check::new(
        "derived_form_in_algebra",
        "holonomy.omega",
        derived.membership_defect,
        10.0 * tol.abs * quadratic_scale,
    ));

    let built = curvature_raw(system);
    let curvature_scale = 10.0 * tol.abs * (1.0 + built.tensor.max_abs());
    checks.push(Check::new(
        "curvature_bianchi",
        "holonomy.curvature",
        bianchi_residual(&built.tensor),
        curvature_scale,
    ));
    checks.push(Check::new(
        "curvature_pair_symmetry",
        "holonomy.curvature",
        built.tensor.pair_symmetry_defect(),
        curvature_scale,
    ));
    checks.push(Check::new(
        "curvature_in_algebra",
        "holonomy.curvature",
        built.membership_defect,
        10.0 * tol.abs * quadratic_scale,
    ));

    let from_tensor = built.tensor.scalar();
    let from_torsion = torsion_scalar(system.torsion());
    checks.push(Check::new(
        "scalar_curvature_identity",
        "holonomy.scalar_curvature",
        (from_tensor - from_torsion).abs(),
        tol.abs * (1.0 + from_torsion.abs()),
    ));

    let opts = ClassifyOptions {
        tol: *tol,
        samples: entry.samples,
        seed: entry.seed,
    };
    let (verdict, error): (Option<Verdict>, Option<Error>) = match classify(system, &opts) {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e)),
    };

    if let Some(v) = &verdict {
        checks.push(Check::new(
            "verdict_consistent",
            "holonomy.classify",
            v.failures.len() as f64,
            0.0,
        ));
        if let Some(expected) = entry.expect {
            checks.push(Check::new(
                "verdict_expectation",
                "holonomy.classify",
                if v.branch == expected { 0.0 } else { 1.0 },
                0.0,
            ));
        }
    }

    let status = if let Some(e) = &error {
        if e.is_inconclusive() {
            Status::Inconclusive
        } else {
            Status::CheckFailed
        }
    } else if checks.iter().any(|c| !c.pass) {
        Status::CheckFailed
    } else {
        Status::Ok
    };

    SystemReport {
        name: name.to_string(),
        dimension: system.dim(),
        algebra_dim: system.algebra().dim(),
        form_space_dim,
        status,
        error: error.map(|e| e.to_string()),
        verdict,
        checks,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn verify_entry(entry: &PreparedEntry, out: &mut Vec<SystemReport>) {
    let start = Instant::now();
    match &entry.torsion {
        TorsionSource::Fixed(form) => {
            match SkewTorsionSystem::new(form.clone(), entry.algebra.clone(), &entry.tolerance) {
                Ok(system) => out.push(verify_system(&entry.name, &system, entry, None)),
                Err(e) => out.push(failed_entry(entry, e, start, None)),
            }
        }
        TorsionSource::Solve => {
            let forms: Vec<ThreeForm> = match solve_form_space(&entry.algebra, &entry.tolerance) {
                Ok(forms) => forms,
                Err(e) => {
                    out.push(failed_entry(entry, e, start, None));
                    return;
                }
            };
            let count = forms.len();
            if count == 0 {
                // Nothing admissible: the empty form space is itself the
                // result, reported as a clean entry with zero systems.
                out.push(SystemReport {
                    name: entry.name.clone(),
                    dimension: entry.algebra.ambient_dim(),
                    algebra_dim: entry.algebra.dim(),
                    form_space_dim: Some(0),
                    status: Status::Ok,
                    error: None,
                    verdict: None,
                    checks: Vec::new(),
                    wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
                });
                return;
            }
            for (idx, form) in forms.into_iter().enumerate() {
                let name = format!("{}#{idx}", entry.name);
                match SkewTorsionSystem::new(form, entry.algebra.clone(), &entry.tolerance) {
                    Ok(system) => out.push(verify_system(&name, &system, entry, Some(count))),
                    Err(e) => out.push(failed_entry(entry, e, start, Some(count))),
                }
            }
        }
    }
}

fn failed_entry(
    entry: &PreparedEntry,
    error: Error,
    start: Instant,
    form_space_dim: Option<usize>,
) -> SystemReport {
    let status = if error.is_inconclusive() {
        Status::Inconclusive
    } else {
        Status::CheckFailed
    };
    SystemReport {
        name: entry.name.clone(),
        dimension: entry.algebra.ambient_dim(),
        algebra_dim: entry.algebra.dim(),
        form_space_dim,
        status,
        error: Some(error.to_string()),
        verdict: None,
        checks: Vec::new(),
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Verify every entry of a prepared run and assemble the report.
pub fn run_verification(run: &PreparedRun) -> Report {
    let start = Instant::now();
    let mut systems = Vec::new();
    for entry in &run.entries {
        verify_entry(entry, &mut systems);
    }
    Report {
        schema: SCHEMA_VERSION,
        toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
        tolerance: run.tolerance,
        seed: run.seed,
        samples: run.samples,
        systems,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}
