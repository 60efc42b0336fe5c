//! Skew-torsion holonomy systems at desk scale.
//!
//! A skew-torsion holonomy system is a triple `[V, T, G]`: a Euclidean space
//! `V = R^n`, a connected subgroup `G` of `SO(n)` given through its Lie
//! algebra of skew-symmetric matrices, and a linear map `x -> T_x` into that
//! algebra whose associated trilinear form `<T_x y, z>` is totally
//! antisymmetric. This crate represents such triples concretely, computes the
//! derived 4-form, the algebraic curvature tensor and its scalar curvature,
//! decides symmetry and transitivity, decomposes representations, solves for
//! the space of admissible torsion forms of a given algebra, and classifies
//! each system into one of the structural branches an irreducible system can
//! land in.
//!
//! Modules mirror the layers of the construction:
//!
//! - [`numerics`]: rank-aware linear algebra (orthonormalization, kernels,
//!   symmetric eigensolves, skew exponentials).
//! - [`exterior`]: 3- and 4-forms with total antisymmetry, the operator view
//!   `T_x`, and the infinitesimal/orthogonal actions on forms.
//! - [`lie`]: subalgebras of `so(n)`, closures, centralizers, invariant
//!   decompositions, bracket structure.
//! - [`holonomy`]: the system type itself, curvature, averaging, orbit
//!   geometry, and classification.
//! - [`catalog`]: builders for the concrete representations shipped with the
//!   toolkit plus the torsion-form-space solver.
//! - [`config`] / [`report`]: the machine-readable front-end formats.

pub mod catalog;
pub mod config;
pub mod error;
pub mod exterior;
pub mod holonomy;
pub mod lie;
pub mod numerics;
pub mod report;

/// Dense double-precision matrix used everywhere in the crate.
pub type Dmat = nalgebra::DMatrix<f64>;
/// Dense double-precision column vector.
pub type Dvec = nalgebra::DVector<f64>;

pub use catalog::{CatalogEntry, CATALOG};
pub use error::{Error, Result};
pub use exterior::{FourForm, ThreeForm};
pub use holonomy::{Branch, ClassifyOptions, CurvatureTensor, SkewTorsionSystem, Verdict};
pub use lie::{BracketStructure, BracketTable, Decomposition, Subalgebra};
pub use numerics::{SubspaceBasis, Tolerance};
