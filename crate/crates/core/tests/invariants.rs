//! Cross-module invariants exercised through the public API.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skewtor_core::catalog::{build_adjoint_system, solve_form_space, CompactFamily, CATALOG};
use skewtor_core::exterior::cross_product_form;
use skewtor_core::config::{prepare, Overrides, VerifyConfig};
use skewtor_core::holonomy::{classify, jacobi_defect, omega, ClassifyOptions, SkewTorsionSystem};
use skewtor_core::lie::{bracket_structure, BracketTable, DEFAULT_SAMPLES, DEFAULT_SEED};
use skewtor_core::numerics::{sym_eigen, Tolerance};
use skewtor_core::report::{run_verification, Status};
use skewtor_core::{Branch, ThreeForm};

fn tol() -> Tolerance {
    Tolerance::default()
}

pub use skewtor_core::catalog::build_so;

#[test]
fn jacobi_defect_and_derived_form_agree_in_both_directions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let tol = tol();
    // Dimension 4: every form satisfies Jacobi and the derived form is tiny.
    for _ in 0..10 {
        let form = ThreeForm::sample_unit(4, &mut rng);
        let sys = SkewTorsionSystem::new(form.clone(), build_so(4, &tol).unwrap(), &tol).unwrap();
        let defect = jacobi_defect(&form);
        let derived = omega(&sys, &tol).unwrap().max_abs();
        assert!(defect <= tol.abs);
        assert!(derived <= 10.0 * tol.abs);
    }
    // Dimension 6: generic forms fail Jacobi and the derived form is large.
    for _ in 0..10 {
        let form = ThreeForm::sample_unit(6, &mut rng);
        let sys = SkewTorsionSystem::new(form.clone(), build_so(6, &tol).unwrap(), &tol).unwrap();
        let defect = jacobi_defect(&form);
        let derived = omega(&sys, &tol).unwrap().max_abs();
        assert!(defect > 0.01);
        assert!(derived > 0.01);
        assert!((defect - derived).abs() <= 1e-9 * (1.0 + defect));
    }
}

#[test]
fn killing_forms_of_compact_brackets_are_negative_definite() {
    let tol = tol();
    let mut brackets = vec![cross_product_form()];
    for k in 3..=5 {
        brackets.push(
            build_adjoint_system(CompactFamily::So, k, &tol)
                .unwrap()
                .torsion()
                .clone(),
        );
    }
    for k in 2..=3 {
        brackets.push(
            build_adjoint_system(CompactFamily::Su, k, &tol)
                .unwrap()
                .torsion()
                .clone(),
        );
    }
    for form in &brackets {
        let table = BracketTable::from_three_form(form);
        let killing = table.killing_matrix();
        let sym_defect = (&killing - killing.transpose()).norm();
        assert!(sym_defect <= tol.abs * (1.0 + killing.norm()));
        let (values, _) = sym_eigen(&killing, &tol).unwrap();
        assert!(
            values.iter().all(|&v| v < 0.0),
            "Killing form not negative definite"
        );
    }
}

#[test]
fn bracket_structure_matches_the_underlying_algebra() {
    let tol = tol();
    // The bracket recovered from the adjoint so(5) torsion is simple of
    // rank 2; so(4) gives a semisimple but non-simple bracket.
    let so5 = build_adjoint_system(CompactFamily::So, 5, &tol).unwrap();
    let s = bracket_structure(so5.torsion(), &tol, DEFAULT_SAMPLES, DEFAULT_SEED).unwrap();
    assert!(s.is_simple);
    assert_eq!(s.rank, 2);
    assert_eq!(s.center_dim, 0);
    assert_eq!(s.killing.negative, 10);

    let so4 = build_adjoint_system(CompactFamily::So, 4, &tol).unwrap();
    let s = bracket_structure(so4.torsion(), &tol, DEFAULT_SAMPLES, DEFAULT_SEED).unwrap();
    assert!(!s.is_simple, "so(4) splits into two ideals");
    assert_eq!(s.center_dim, 0);
    assert_eq!(s.rank, 2);
}

#[test]
fn every_catalog_entry_solves_and_classifies_without_inconsistency() {
    let tol = tol();
    let opts = ClassifyOptions::default();
    for entry in &CATALOG {
        let param = entry.min_param;
        let built = entry.build(param, &tol).unwrap();
        let forms = solve_form_space(&built.algebra, &tol).unwrap();
        for form in forms {
            let sys = SkewTorsionSystem::new(form, built.algebra.clone(), &tol).unwrap();
            let verdict = classify(&sys, &opts).unwrap();
            assert_ne!(
                verdict.branch,
                Branch::Inconsistent,
                "catalog entry {} param {param}",
                entry.name
            );
        }
    }
}

#[test]
fn explicit_matrix_config_runs_end_to_end() {
    // so(3) given as raw matrices, cross-product form given as entries.
    let config_text = r#"{
        "schema": 1,
        "systems": [{
            "name": "explicit-so3",
            "algebra": {"matrices": [
                [0.0, 1.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, -1.0, 0.0]
            ]},
            "theta": {"entries": [[0, 1, 2, 1.0]]},
            "expect": "full_orthogonal"
        }]
    }"#;
    let config = VerifyConfig::from_json(config_text).unwrap();
    let run = prepare(&config, &Overrides::default()).unwrap();
    let report = run_verification(&run);
    assert_eq!(report.exit_code(), 0);
    assert_eq!(report.systems[0].status, Status::Ok);
    assert_eq!(
        report.systems[0].verdict.as_ref().unwrap().branch,
        Branch::FullOrthogonal
    );
}

#[test]
fn non_closed_explicit_matrices_are_a_config_error() {
    // Two elementary rotations of so(3) whose bracket leaves the span.
    let config_text = r#"{
        "systems": [{
            "algebra": {"matrices": [
                [0.0, 1.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0]
            ]},
            "theta": "solve"
        }]
    }"#;
    let config = VerifyConfig::from_json(config_text).unwrap();
    let err = prepare(&config, &Overrides::default()).unwrap_err();
    assert!(err.to_string().contains("matrices"), "got: {err}");
}
