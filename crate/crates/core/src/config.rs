//! Configuration format of the verification front end.
//!
//! A config file is a JSON document: global tolerance/seed/samples plus a
//! list of systems. Each system names an algebra (catalog reference or
//! explicit matrices) and a torsion form: explicit `[i, j, k, value]`
//! entries, `"solve"` to take every basis element of the admissible form
//! space, or `"adjoint"` for the built-in bracket form of the adjoint
//! entries. Resolution errors carry the offending field; they map to exit
//! code 4 in the command-line tool.

use serde::Deserialize;

use crate::catalog;
use crate::error::Error;
use crate::exterior::ThreeForm;
use crate::holonomy::{Branch, SkewTorsionSystem};
use crate::lie::{Subalgebra, DEFAULT_SAMPLES, DEFAULT_SEED};
use crate::numerics::Tolerance;
use crate::Dmat;

pub const SCHEMA_VERSION: u32 = 1;

/// A config-file problem; always maps to exit code 4.
#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config file '{path}': {message}")]
    Unreadable { path: String, message: String },
    #[error("config is not valid JSON: {0}")]
    Parse(String),
    #[error("config field '{field}': {message}")]
    Invalid { field: String, message: String },
}

impl ConfigError {
    fn invalid(field: impl Into<String>, message: impl std::fmt::Display) -> Self {
        ConfigError::Invalid {
            field: field.into(),
            message: message.to_string(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceConfig {
    pub rel: Option<f64>,
    pub abs: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, untagged)]
pub enum AlgebraSpec {
    Catalog { catalog: String, parameter: usize },
    Explicit { matrices: Vec<Vec<f64>> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ThetaSpec {
    Mode(String),
    Entries {
        entries: Vec<(usize, usize, usize, f64)>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub name: Option<String>,
    pub dimension: Option<usize>,
    pub algebra: AlgebraSpec,
    pub theta: ThetaSpec,
    /// Expected verdict branch; a mismatch is a check failure.
    pub expect: Option<String>,
    pub tolerance: Option<ToleranceConfig>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    pub schema: Option<u32>,
    pub tolerance: Option<ToleranceConfig>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub systems: Vec<SystemConfig>,
}

impl VerifyConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let config: VerifyConfig =
            serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        if let Some(schema) = config.schema {
            if schema != SCHEMA_VERSION {
                return Err(ConfigError::invalid(
                    "schema",
                    format!("unsupported schema version {schema}, expected {SCHEMA_VERSION}"),
                ));
            }
        }
        Ok(config)
    }
}

/// Command-line overrides; they win over both global and per-system values.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

/// How the torsion form of a prepared entry is obtained.
#[derive(Debug, Clone)]
pub enum TorsionSource {
    /// One fixed form (explicit entries or the canonical adjoint bracket).
    Fixed(ThreeForm),
    /// Every basis element of the admissible form space, solved at runtime.
    Solve,
}

/// A system entry after config validation, ready for verification.
#[derive(Debug)]
pub struct PreparedEntry {
    pub name: String,
    pub algebra: Subalgebra,
    pub torsion: TorsionSource,
    pub expect: Option<Branch>,
    pub tolerance: Tolerance,
    pub seed: u64,
    pub samples: usize,
}

/// Run-wide resolved settings.
#[derive(Debug)]
pub struct PreparedRun {
    pub tolerance: Tolerance,
    pub seed: u64,
    pub samples: usize,
    pub entries: Vec<PreparedEntry>,
}

fn merge_tolerance(
    base: Tolerance,
    config: &Option<ToleranceConfig>,
    field: &str,
) -> Result<Tolerance, ConfigError> {
    let mut rel = base.rel;
    let mut abs = base.abs;
    if let Some(t) = config {
        if let Some(r) = t.rel {
            rel = r;
        }
        if let Some(a) = t.abs {
            abs = a;
        }
    }
    Tolerance::new(rel, abs).map_err(|e| ConfigError::invalid(field, e))
}

fn resolve_algebra(
    spec: &AlgebraSpec,
    tol: &Tolerance,
    field: &str,
) -> Result<(Subalgebra, Option<ThreeForm>, &'static str), ConfigError> {
    match spec {
        AlgebraSpec::Catalog { catalog, parameter } => {
            let entry = catalog::find(catalog).ok_or_else(|| {
                ConfigError::invalid(
                    format!("{field}.catalog"),
                    format!(
                        "unknown catalog name '{catalog}'; known names: {}",
                        catalog::CATALOG
                            .iter()
                            .map(|e| e.name)
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                )
            })?;
            let built = entry
                .build(*parameter, tol)
                .map_err(|e| ConfigError::invalid(format!("{field}.parameter"), e))?;
            Ok((built.algebra, built.canonical_torsion, entry.name))
        }
        AlgebraSpec::Explicit { matrices } => {
            if matrices.is_empty() {
                return Err(ConfigError::invalid(
                    format!("{field}.matrices"),
                    "explicit algebra needs at least one matrix",
                ));
            }
            let len = matrices[0].len();
            let n = (len as f64).sqrt().round() as usize;
            if n * n != len {
                return Err(ConfigError::invalid(
                    format!("{field}.matrices"),
                    format!("row-major matrix data of length {len} is not square"),
                ));
            }
            let mut mats = Vec::with_capacity(matrices.len());
            for (idx, rows) in matrices.iter().enumerate() {
                if rows.len() != len {
                    return Err(ConfigError::invalid(
                        format!("{field}.matrices[{idx}]"),
                        format!("expected {len} entries, got {}", rows.len()),
                    ));
                }
                mats.push(Dmat::from_row_slice(n, n, rows));
            }
            let algebra = Subalgebra::from_span(n, &mats, tol)
                .map_err(|e| ConfigError::invalid(format!("{field}.matrices"), e))?;
            Ok((algebra, None, "explicit"))
        }
    }
}

/// Validate a parsed config and build every algebra and fixed form in it.
pub fn prepare(config: &VerifyConfig, overrides: &Overrides) -> Result<PreparedRun, ConfigError> {
    let mut base_tol = merge_tolerance(Tolerance::default(), &config.tolerance, "tolerance")?;
    if let Some(t) = overrides.tol {
        base_tol = Tolerance::uniform(t).map_err(|e| ConfigError::invalid("--tol", e))?;
    }
    let base_seed = overrides.seed.or(config.seed).unwrap_or(DEFAULT_SEED);
    let base_samples = overrides
        .samples
        .or(config.samples)
        .unwrap_or(DEFAULT_SAMPLES);
    if base_samples == 0 {
        return Err(ConfigError::invalid("samples", "must be at least 1"));
    }

    let mut entries = Vec::with_capacity(config.systems.len());
    for (idx, sys) in config.systems.iter().enumerate() {
        let field = format!("systems[{idx}]");
        let mut tol = merge_tolerance(base_tol, &sys.tolerance, &format!("{field}.tolerance"))?;
        if let Some(t) = overrides.tol {
            tol = Tolerance::uniform(t).map_err(|e| ConfigError::invalid("--tol", e))?;
        }
        let seed = overrides.seed.or(sys.seed).unwrap_or(base_seed);
        let samples = overrides.samples.or(sys.samples).unwrap_or(base_samples);
        if samples == 0 {
            return Err(ConfigError::invalid(format!("{field}.samples"), "must be at least 1"));
        }

        let (algebra, canonical, catalog_name) =
            resolve_algebra(&sys.algebra, &tol, &format!("{field}.algebra"))?;
        let n = algebra.ambient_dim();
        if let Some(d) = sys.dimension {
            if d != n {
                return Err(ConfigError::invalid(
                    format!("{field}.dimension"),
                    format!("declared dimension {d} but the algebra acts on R^{n}"),
                ));
            }
        }

        let torsion = match &sys.theta {
            ThetaSpec::Mode(mode) => match mode.as_str() {
                "solve" => TorsionSource::Solve,
                "adjoint" => match canonical {
                    Some(form) => TorsionSource::Fixed(form),
                    None => {
                        return Err(ConfigError::invalid(
                            format!("{field}.theta"),
                            format!(
                                "theta 'adjoint' needs an adjoint catalog entry, got '{catalog_name}'"
                            ),
                        ))
                    }
                },
                other => {
                    return Err(ConfigError::invalid(
                        format!("{field}.theta"),
                        format!("unknown theta mode '{other}'; use 'adjoint', 'solve' or entries"),
                    ))
                }
            },
            ThetaSpec::Entries { entries: list } => {
                let form = ThreeForm::from_entries(n, list)
                    .map_err(|e| ConfigError::invalid(format!("{field}.theta.entries"), e))?;
                // Membership is a config invariant for explicit forms.
                SkewTorsionSystem::new(form.clone(), algebra.clone(), &tol).map_err(
                    |e: Error| ConfigError::invalid(format!("{field}.theta.entries"), e),
                )?;
                TorsionSource::Fixed(form)
            }
        };

        let expect = match &sys.expect {
            None => None,
            Some(text) => Some(text.parse::<Branch>().map_err(|e| {
                ConfigError::invalid(format!("{field}.expect"), e)
            })?),
        };

        let name = sys
            .name
            .clone()
            .unwrap_or_else(|| format!("{catalog_name}-{idx}"));
        entries.push(PreparedEntry {
            name,
            algebra,
            torsion,
            expect,
            tolerance: tol,
            seed,
            samples,
        });
    }

    Ok(PreparedRun {
        tolerance: base_tol,
        seed: base_seed,
        samples: base_samples,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_catalog_config_resolves() {
        let text = r#"{
            "systems": [
                {"algebra": {"catalog": "adjoint-so", "parameter": 5}, "theta": "adjoint"}
            ]
        }"#;
        let config = VerifyConfig::from_json(text).unwrap();
        let run = prepare(&config, &Overrides::default()).unwrap();
        assert_eq!(run.entries.len(), 1);
        assert_eq!(run.entries[0].algebra.ambient_dim(), 10);
        assert!(matches!(run.entries[0].torsion, TorsionSource::Fixed(_)));
    }

    #[test]
    fn unknown_catalog_name_is_a_config_error() {
        let text = r#"{
            "systems": [
                {"algebra": {"catalog": "sl", "parameter": 2}, "theta": "solve"}
            ]
        }"#;
        let config = VerifyConfig::from_json(text).unwrap();
        let err = prepare(&config, &Overrides::default()).unwrap_err();
        match err {
            ConfigError::Invalid { field, message } => {
                assert!(field.contains("catalog"), "field was {field}");
                assert!(message.contains("sl"));
            }
            other => panic!("expected Invalid, got {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch_is_a_config_error() {
        let text = r#"{
            "systems": [
                {"dimension": 7, "algebra": {"catalog": "so", "parameter": 3}, "theta": "solve"}
            ]
        }"#;
        let config = VerifyConfig::from_json(text).unwrap();
        let err = prepare(&config, &Overrides::default()).unwrap_err();
        assert!(err.to_string().contains("dimension"));
    }

    #[test]
    fn adjoint_theta_on_plain_catalog_entry_fails() {
        let text = r#"{
            "systems": [
                {"algebra": {"catalog": "so", "parameter": 4}, "theta": "adjoint"}
            ]
        }"#;
        let config = VerifyConfig::from_json(text).unwrap();
        assert!(prepare(&config, &Overrides::default()).is_err());
    }

    #[test]
    fn explicit_theta_outside_the_algebra_fails_membership() {
        // Cross-product form against u(1)-like single rotation plane.
        let text = r#"{
            "systems": [
                {
                    "algebra": {"matrices": [[0.0, 1.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0]]},
                    "theta": {"entries": [[0, 1, 2, 1.0]]}
                }
            ]
        }"#;
        let config = VerifyConfig::from_json(text).unwrap();
        let err = prepare(&config, &Overrides::default()).unwrap_err();
        assert!(err.to_string().contains("theta.entries"));
    }

    #[test]
    fn overrides_win() {
        let text = r#"{
            "tolerance": {"rel": 1e-8, "abs": 1e-8},
            "seed": 5,
            "systems": [
                {"algebra": {"catalog": "so", "parameter": 3}, "theta": "solve", "seed": 9}
            ]
        }"#;
        let config = VerifyConfig::from_json(text).unwrap();
        let run = prepare(
            &config,
            &Overrides {
                tol: Some(1e-10),
                seed: Some(42),
                samples: None,
            },
        )
        .unwrap();
        assert_eq!(run.entries[0].seed, 42);
        assert_eq!(run.entries[0].tolerance.abs, 1e-10);
        assert_eq!(run.samples, DEFAULT_SAMPLES);
    }

    #[test]
    fn bad_expect_name_is_a_config_error() {
        let text = r#"{
            "systems": [
                {"algebra": {"catalog": "so", "parameter": 3}, "theta": "solve", "expect": "fully"}
            ]
        }"#;
        let config = VerifyConfig::from_json(text).unwrap();
        assert!(prepare(&config, &Overrides::default()).is_err());
    }
}
