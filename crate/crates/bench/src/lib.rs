//! Benchmark-only crate; see `benches/pipeline.rs`.
//!
//! Shared fixtures for the benchmarks live here so the bench target stays a
//! plain criterion harness.

use skewtor_core::catalog::{build_adjoint_system, build_so, CompactFamily};
use skewtor_core::holonomy::SkewTorsionSystem;
use skewtor_core::numerics::Tolerance;

/// The heaviest shipped system: the adjoint representation of so(5).
pub fn adjoint_so5() -> SkewTorsionSystem {
    build_adjoint_system(CompactFamily::So, 5, &Tolerance::default())
        .expect("catalog system builds")
}

/// A full-orthogonal system of the given dimension with a generic unit form.
pub fn random_system(dim: usize, seed: u64) -> SkewTorsionSystem {
    use rand::SeedableRng;
    let tol = Tolerance::default();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let form = skewtor_core::ThreeForm::sample_unit(dim, &mut rng);
    SkewTorsionSystem::new(form, build_so(dim, &tol).expect("so(n) builds"), &tol)
        .expect("full algebra accepts any form")
}
