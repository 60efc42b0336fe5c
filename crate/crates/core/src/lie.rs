//! Matrix Lie subalgebras of the skew-symmetric matrices.
//!
//! A [`Subalgebra`] is an orthonormal basis (trace inner product
//! `<A, B> = tr(A^T B)`) of a bracket-closed subspace of `so(n)`. On top of
//! that sit the structural operations: closures, fixed spaces, centralizers,
//! the invariant decomposition of the module, and the bracket structure a
//! 3-form induces through `[x, y] = T_x y`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exterior::ThreeForm;
use crate::numerics::{
    mat_of_vec, nullspace, orthonormalize, sample_unit_vectors, sym_eigen, vec_of_mat,
    SubspaceBasis, Tolerance,
};
use crate::{Dmat, Dvec};

/// Default number of sample vectors for orbit-dimension estimates.
pub const DEFAULT_SAMPLES: usize = 8;
/// Default seed for orbit-dimension estimates.
pub const DEFAULT_SEED: u64 = 0;
/// Fixed seed behind the generic commutant combination used to split
/// representations; the draw is re-verified, an unlucky one fails loudly.
const GENERIC_COMBINATION_SEED: u64 = 1;

pub(crate) fn commutator(a: &Dmat, b: &Dmat) -> Dmat {
    a * b - b * a
}

/// Orthonormal basis of a bracket-closed subspace of `so(n)`.
#[derive(Debug, Clone)]
pub struct Subalgebra {
    ambient_dim: usize,
    basis: Vec<Dmat>,
}

impl Subalgebra {
    /// Validates skewness, orthonormality and bracket closure of `basis`.
    pub fn new(ambient_dim: usize, basis: Vec<Dmat>, tol: &Tolerance) -> Result<Self> {
        for (idx, b) in basis.iter().enumerate() {
            if b.nrows() != ambient_dim || b.ncols() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    context: "subalgebra basis matrix",
                    expected: ambient_dim,
                    found: b.nrows(),
                });
            }
            let defect = (b + b.transpose()).norm();
            if defect > 10.0 * tol.abs {
                return Err(Error::contract(format!(
                    "subalgebra basis element {idx} not skew-symmetric: defect {defect:.3e}"
                )));
            }
        }
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                let defect = ((a.transpose() * b).trace() - expected).abs();
                if defect > 10.0 * tol.abs {
                    return Err(Error::contract(format!(
                        "subalgebra basis not orthonormal at ({i}, {j}): defect {defect:.3e}"
                    )));
                }
            }
        }
        let alg = Subalgebra { ambient_dim, basis };
        for i in 0..alg.basis.len() {
            for j in (i + 1)..alg.basis.len() {
                let c = commutator(&alg.basis[i], &alg.basis[j]);
                let residual = alg.residual_off(&c);
                if residual > 10.0 * tol.abs * (1.0 + c.norm()) {
                    return Err(Error::contract(format!(
                        "basis not bracket-closed: [b{i}, b{j}] leaves the span by {residual:.3e}"
                    )));
                }
            }
        }
        Ok(alg)
    }

    /// Orthonormalize a spanning set of skew matrices, then validate.
    pub fn from_span(ambient_dim: usize, span: &[Dmat], tol: &Tolerance) -> Result<Self> {
        let vectors: Vec<Dvec> = span.iter().map(vec_of_mat).collect();
        let basis = orthonormalize(ambient_dim * ambient_dim, &vectors, tol)?;
        let matrices = basis
            .vectors()
            .iter()
            .map(|v| mat_of_vec(ambient_dim, v))
            .collect();
        Subalgebra::new(ambient_dim, matrices, tol)
    }

    /// The zero subalgebra.
    pub fn empty(ambient_dim: usize) -> Self {
        Subalgebra {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Dmat] {
        &self.basis
    }

    /// Coefficients of the orthogonal projection of `m` onto the span.
    pub fn coefficients(&self, m: &Dmat) -> Vec<f64> {
        self.basis
            .iter()
            .map(|b| (b.transpose() * m).trace())
            .collect()
    }

    /// Norm of the component of `m` orthogonal to the span.
    pub fn residual_off(&self, m: &Dmat) -> f64 {
        let mut rest = m.clone();
        for b in &self.basis {
            rest -= b * (b.transpose() * m).trace();
        }
        rest.norm()
    }

    /// Rebuild a matrix from span coefficients.
    pub fn from_coefficients(&self, coeffs: &[f64]) -> Dmat {
        let mut m = Dmat::zeros(self.ambient_dim, self.ambient_dim);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            m += b * *c;
        }
        m
    }
}

/// Smallest bracket-closed subspace of `so(n)` containing the generators.
///
/// Alternates bracketing all current pairs with re-orthonormalization until
/// the dimension survives a full round unchanged.
pub fn lie_closure(generators: &[Dmat], ambient_dim: usize, tol: &Tolerance) -> Result<Subalgebra> {
    for g in generators {
        crate::exterior::check_skew(g, ambient_dim, "lie_closure generator")?;
    }
    let mut current: Vec<Dvec> = generators.iter().map(vec_of_mat).collect();
    let mut basis = orthonormalize(ambient_dim * ambient_dim, &current, tol)?;
    loop {
        let mats: Vec<Dmat> = basis
            .vectors()
            .iter()
            .map(|v| mat_of_vec(ambient_dim, v))
            .collect();
        current = basis.vectors().to_vec();
        for i in 0..mats.len() {
            for j in (i + 1)..mats.len() {
                current.push(vec_of_mat(&commutator(&mats[i], &mats[j])));
            }
        }
        let next = orthonormalize(ambient_dim * ambient_dim, &current, tol)?;
        if next.dim() == basis.dim() {
            break;
        }
        basis = next;
    }
    let matrices = basis
        .vectors()
        .iter()
        .map(|v| mat_of_vec(ambient_dim, v))
        .collect();
    Subalgebra::new(ambient_dim, matrices, tol)
}

/// Smallest subspace of `ambient` containing the generators and stable under
/// bracketing with every element of `ambient`.
pub fn ideal_closure(
    generators: &[Dmat],
    ambient: &Subalgebra,
    tol: &Tolerance,
) -> Result<Subalgebra> {
    let n = ambient.ambient_dim();
    for (idx, g) in generators.iter().enumerate() {
        let residual = ambient.residual_off(g);
        if residual > 10.0 * tol.abs * (1.0 + g.norm()) {
            return Err(Error::contract(format!(
                "ideal generator {idx} lies outside the ambient algebra by {residual:.3e}"
            )));
        }
    }
    let mut vectors: Vec<Dvec> = generators.iter().map(vec_of_mat).collect();
    let mut basis = orthonormalize(n * n, &vectors, tol)?;
    loop {
        let mats: Vec<Dmat> = basis.vectors().iter().map(|v| mat_of_vec(n, v)).collect();
        vectors = basis.vectors().to_vec();
        for m in &mats {
            for b in ambient.basis() {
                vectors.push(vec_of_mat(&commutator(b, m)));
            }
        }
        let next = orthonormalize(n * n, &vectors, tol)?;
        if next.dim() == basis.dim() {
            break;
        }
        basis = next;
    }
    let matrices = basis.vectors().iter().map(|v| mat_of_vec(n, v)).collect();
    Subalgebra::new(n, matrices, tol)
}

/// Joint kernel `{v : Bv = 0 for all B}` of the algebra.
pub fn fixed_subspace(algebra: &Subalgebra, tol: &Tolerance) -> Result<SubspaceBasis> {
    let n = algebra.ambient_dim();
    if algebra.dim() == 0 {
        return Ok(SubspaceBasis::full(n));
    }
    let mut stacked = Dmat::zeros(algebra.dim() * n, n);
    for (idx, b) in algebra.basis().iter().enumerate() {
        stacked.view_mut((idx * n, 0), (n, n)).copy_from(b);
    }
    nullspace(&stacked, tol)
}

/// Which symmetry class of matrices a commutant is computed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum MatrixPart {
    Symmetric,
    Skew,
}

pub(crate) fn part_dim(d: usize, part: MatrixPart) -> usize {
    match part {
        MatrixPart::Symmetric => d * (d + 1) / 2,
        MatrixPart::Skew => d * (d - 1) / 2,
    }
}

/// Orthonormal coordinates of a symmetric or skew matrix with respect to the
/// elementary basis `E_aa` and `(E_ab ± E_ba)/sqrt(2)`.
pub(crate) fn part_coords(m: &Dmat, part: MatrixPart) -> Dvec {
    let d = m.nrows();
    let sqrt2 = std::f64::consts::SQRT_2;
    match part {
        MatrixPart::Symmetric => {
            let mut out = Dvec::zeros(part_dim(d, part));
            let mut pos = 0;
            for a in 0..d {
                out[pos] = m[(a, a)];
                pos += 1;
                for b in (a + 1)..d {
                    out[pos] = sqrt2 * 0.5 * (m[(a, b)] + m[(b, a)]);
                    pos += 1;
                }
            }
            out
        }
        MatrixPart::Skew => {
            let mut out = Dvec::zeros(part_dim(d, part));
            let mut pos = 0;
            for a in 0..d {
                for b in (a + 1)..d {
                    out[pos] = sqrt2 * 0.5 * (m[(a, b)] - m[(b, a)]);
                    pos += 1;
                }
            }
            out
        }
    }
}

pub(crate) fn part_matrix(d: usize, coords: &Dvec, part: MatrixPart) -> Dmat {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut m = Dmat::zeros(d, d);
    let mut pos = 0;
    match part {
        MatrixPart::Symmetric => {
            for a in 0..d {
                m[(a, a)] = coords[pos];
                pos += 1;
                for b in (a + 1)..d {
                    m[(a, b)] = inv_sqrt2 * coords[pos];
                    m[(b, a)] = inv_sqrt2 * coords[pos];
                    pos += 1;
                }
            }
        }
        MatrixPart::Skew => {
            for a in 0..d {
                for b in (a + 1)..d {
                    m[(a, b)] = inv_sqrt2 * coords[pos];
                    m[(b, a)] = -inv_sqrt2 * coords[pos];
                    pos += 1;
                }
            }
        }
    }
    m
}

/// Orthonormal basis of `{X in part : [X, O] = 0 for every operator O}`.
///
/// The commutator of a skew operator with a symmetric (resp. skew) matrix
/// stays symmetric (resp. skew), so the constraints close within the part.
pub(crate) fn commutant_basis(
    operators: &[Dmat],
    d: usize,
    part: MatrixPart,
    tol: &Tolerance,
) -> Result<Vec<Dmat>> {
    let pd = part_dim(d, part);
    if pd == 0 {
        return Ok(Vec::new());
    }
    if operators.is_empty() {
        let mut all = Vec::with_capacity(pd);
        for s in 0..pd {
            let mut coords = Dvec::zeros(pd);
            coords[s] = 1.0;
            all.push(part_matrix(d, &coords, part));
        }
        return Ok(all);
    }
    let mut constraints = Dmat::zeros(operators.len() * pd, pd);
    for s in 0..pd {
        let mut coords = Dvec::zeros(pd);
        coords[s] = 1.0;
        let e = part_matrix(d, &coords, part);
        for (oi, op) in operators.iter().enumerate() {
            let c = part_coords(&commutator(op, &e), part);
            constraints.view_mut((oi * pd, s), (pd, 1)).copy_from(&c);
        }
    }
    let kernel = nullspace(&constraints, tol)?;
    Ok(kernel
        .vectors()
        .iter()
        .map(|coords| part_matrix(d, coords, part))
        .collect())
}

/// Basis of the skew matrices on `subspace` commuting with every restricted
/// element of `algebra`, returned in the coordinates of `subspace`.
pub fn centralizer(
    algebra: &Subalgebra,
    subspace: &SubspaceBasis,
    tol: &Tolerance,
) -> Result<Vec<Dmat>> {
    let n = algebra.ambient_dim();
    if subspace.ambient_dim() != n {
        return Err(Error::DimensionMismatch {
            context: "centralizer subspace",
            expected: n,
            found: subspace.ambient_dim(),
        });
    }
    let c = subspace.as_matrix();
    let mut restricted = Vec::with_capacity(algebra.dim());
    for (idx, b) in algebra.basis().iter().enumerate() {
        let image = b * &c;
        let residual = (&image - &c * (c.transpose() * &image)).norm();
        if residual > 10.0 * tol.abs * (1.0 + image.norm()) {
            return Err(Error::contract(format!(
                "subspace not invariant under algebra element {idx}: residual {residual:.3e}"
            )));
        }
        restricted.push(c.transpose() * image);
    }
    commutant_basis(&restricted, subspace.dim(), MatrixPart::Skew, tol)
}

/// Result of [`invariant_decomposition`]: the fixed subspace plus mutually
/// orthogonal invariant parts covering its complement.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub fixed: SubspaceBasis,
    pub parts: Vec<SubspaceBasis>,
    pub irreducible: Vec<bool>,
}

impl Decomposition {
    /// A trivial decomposition is a single irreducible module and no fixed
    /// directions: the algebra acts irreducibly.
    pub fn is_trivial(&self) -> bool {
        self.fixed.dim() == 0 && self.parts.len() == 1
    }
}

/// Split `R^n` into the fixed subspace of the algebra and irreducible
/// invariant parts.
///
/// Parts come from eigenspace clusters of a generic symmetric element of the
/// commutant; every part is re-tested for irreducibility (symmetric
/// commutant of dimension one) and split further if the test fails.
pub fn invariant_decomposition(algebra: &Subalgebra, tol: &Tolerance) -> Result<Decomposition> {
    let n = algebra.ambient_dim();
    let fixed = fixed_subspace(algebra, tol)?;
    let moving = fixed.complement(tol)?;
    if moving.dim() == 0 {
        return Ok(Decomposition {
            fixed,
            parts: Vec::new(),
            irreducible: Vec::new(),
        });
    }
    let c = moving.as_matrix();
    let restricted: Vec<Dmat> = algebra
        .basis()
        .iter()
        .map(|b| c.transpose() * b * &c)
        .collect();
    let local_parts = split_module(&restricted, moving.dim(), tol)?;
    let mut parts = Vec::with_capacity(local_parts.len());
    for local in &local_parts {
        let vectors: Vec<Dvec> = local.vectors().iter().map(|v| &c * v).collect();
        let part = SubspaceBasis::new(n, vectors, tol)?;
        for (idx, b) in algebra.basis().iter().enumerate() {
            let p = part.as_matrix();
            let image = b * &p;
            let residual = (&image - &p * (p.transpose() * &image)).norm();
            if residual > 10.0 * tol.abs * (1.0 + image.norm()) {
                return Err(Error::inconsistency(
                    format!("decomposition part not invariant under element {idx}"),
                    residual,
                    10.0 * tol.abs,
                ));
            }
        }
        parts.push(part);
    }
    let irreducible = vec![true; parts.len()];
    Ok(Decomposition {
        fixed,
        parts,
        irreducible,
    })
}

fn split_module(operators: &[Dmat], d: usize, tol: &Tolerance) -> Result<Vec<SubspaceBasis>> {
    if d == 0 {
        return Ok(Vec::new());
    }
    let commutant = commutant_basis(operators, d, MatrixPart::Symmetric, tol)?;
    if commutant.len() <= 1 {
        return Ok(vec![SubspaceBasis::full(d)]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(GENERIC_COMBINATION_SEED);
    let mut generic = Dmat::zeros(d, d);
    for k in &commutant {
        generic += k * rng.random_range(-1.0..1.0f64);
    }
    let generic = (&generic + generic.transpose()) * 0.5;
    let (values, q) = sym_eigen(&generic, tol)?;
    let clusters = cluster_eigenvalues(values.as_slice(), tol)?;
    if clusters.len() < 2 {
        return Err(Error::DegenerateClustering {
            gap: 0.0,
            spread: values[d - 1] - values[0],
        });
    }
    let mut parts = Vec::new();
    for cluster in clusters {
        let vectors: Vec<Dvec> = cluster
            .iter()
            .map(|&col| Dvec::from(q.column(col).into_owned()))
            .collect();
        let sub = SubspaceBasis::new(d, vectors, tol)?;
        let m = sub.as_matrix();
        let restricted: Vec<Dmat> = operators.iter().map(|o| m.transpose() * o * &m).collect();
        for inner in split_module(&restricted, sub.dim(), tol)? {
            let vectors: Vec<Dvec> = inner.vectors().iter().map(|v| &m * v).collect();
            parts.push(SubspaceBasis::new(d, vectors, tol)?);
        }
    }
    Ok(parts)
}

/// Group sorted eigenvalues into clusters. Gaps below `rel * spread` merge,
/// gaps above `1e3 * rel * spread` split, anything in between is ambiguous.
fn cluster_eigenvalues(values: &[f64], tol: &Tolerance) -> Result<Vec<Vec<usize>>> {
    let spread = values[values.len() - 1] - values[0];
    if spread <= tol.abs {
        // All eigenvalues coincide: a single cluster.
        return Ok(vec![(0..values.len()).collect()]);
    }
    let merge_below = tol.rel * spread;
    let split_above = 1e3 * tol.rel * spread;
    let mut clusters: Vec<Vec<usize>> = vec![vec![0]];
    for i in 1..values.len() {
        let gap = values[i] - values[i - 1];
        if gap <= merge_below {
            clusters.last_mut().unwrap().push(i);
        } else if gap >= split_above {
            clusters.push(vec![i]);
        } else {
            return Err(Error::DegenerateClustering { gap, spread });
        }
    }
    Ok(clusters)
}

/// Structure constants of the candidate bracket `[x, y] = T_x y`.
#[derive(Debug, Clone)]
pub struct BracketTable {
    form: ThreeForm,
}

impl BracketTable {
    /// The table of a 3-form: `<[e_i, e_j], e_k> = T(i, j, k)`.
    pub fn from_three_form(form: &ThreeForm) -> Self {
        BracketTable { form: form.clone() }
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn structure(&self, i: usize, j: usize, k: usize) -> f64 {
        self.form.eval(i, j, k)
    }

    /// `ad_x` as a matrix, i.e. the operator `T_x`.
    pub fn ad(&self, x: &Dvec) -> Result<Dmat> {
        self.form.operator(x)
    }

    pub fn bracket(&self, x: &Dvec, y: &Dvec) -> Result<Dvec> {
        Ok(self.ad(x)? * y)
    }

    /// Killing form `K(x, y) = tr(ad_x ad_y)` as a symmetric matrix.
    pub fn killing_matrix(&self) -> Dmat {
        let n = self.dim();
        let ads: Vec<Dmat> = (0..n).map(|i| self.form.basis_operator(i)).collect();
        let mut k = Dmat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = (&ads[i] * &ads[j]).trace();
                k[(i, j)] = v;
                k[(j, i)] = v;
            }
        }
        k
    }
}

/// Signature of the Killing form: counts of negative, zero and positive
/// eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct KillingSignature {
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
}

/// Structural report on the bracket induced by a 3-form.
#[derive(Debug, Clone)]
pub struct BracketStructure {
    pub center_dim: usize,
    pub is_simple: bool,
    /// Cohomogeneity of the adjoint algebra; equals the rank for compact
    /// algebras since the normal space of an adjoint orbit is the
    /// centralizer of the base point.
    pub rank: usize,
    pub killing: KillingSignature,
}

/// Analyze the bracket `[x, y] = T_x y`; errors unless the Jacobi identity
/// holds within `tol.abs`.
pub fn bracket_structure(
    form: &ThreeForm,
    tol: &Tolerance,
    samples: usize,
    seed: u64,
) -> Result<BracketStructure> {
    let defect = crate::holonomy::jacobi_defect(form);
    if defect > tol.abs {
        return Err(Error::NotABracket {
            defect,
            tol: tol.abs,
        });
    }
    let n = form.dim();
    let ads: Vec<Dmat> = (0..n).map(|i| form.basis_operator(i)).collect();
    let adjoint = Subalgebra::from_span(n, &ads, tol)?;
    let center = fixed_subspace(&adjoint, tol)?;
    let commutant = commutant_basis(&ads, n, MatrixPart::Symmetric, tol)?;
    let is_simple = center.dim() == 0 && commutant.len() == 1;
    let rank = cohomogeneity(&adjoint, samples, seed)?;

    let table = BracketTable::from_three_form(form);
    let killing_matrix = table.killing_matrix();
    let sym_defect = (&killing_matrix - killing_matrix.transpose()).norm();
    if sym_defect > tol.abs {
        return Err(Error::inconsistency("Killing form symmetry", sym_defect, tol.abs));
    }
    let (values, _) = sym_eigen(&killing_matrix, tol)?;
    let max_abs = values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let threshold = (tol.rel * max_abs).max(tol.abs);
    let mut killing = KillingSignature {
        negative: 0,
        zero: 0,
        positive: 0,
    };
    for v in values.iter() {
        if *v < -threshold {
            killing.negative += 1;
        } else if *v > threshold {
            killing.positive += 1;
        } else {
            killing.zero += 1;
        }
    }
    Ok(BracketStructure {
        center_dim: center.dim(),
        is_simple,
        rank,
        killing,
    })
}

/// Codimension of a principal orbit: `n` minus the largest orbit dimension
/// `dim span{Bv}` over sampled generic unit vectors. Deterministic for a
/// given seed.
pub fn cohomogeneity(algebra: &Subalgebra, samples: usize, seed: u64) -> Result<usize> {
    if samples == 0 {
        return Err(Error::contract("cohomogeneity requires at least one sample"));
    }
    let n = algebra.ambient_dim();
    if algebra.dim() == 0 {
        return Ok(n);
    }
    let tol = Tolerance::default();
    let mut max_orbit = 0;
    for v in sample_unit_vectors(n, samples, seed) {
        let images: Vec<Dvec> = algebra.basis().iter().map(|b| b * &v).collect();
        let orbit = orthonormalize(n, &images, &tol)?.dim();
        max_orbit = max_orbit.max(orbit);
    }
    Ok(n - max_orbit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exterior::cross_product_form;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn elementary_rotation(n: usize, i: usize, j: usize) -> Dmat {
        let mut m = Dmat::zeros(n, n);
        m[(i, j)] = -1.0;
        m[(j, i)] = 1.0;
        m
    }

    #[test]
    fn closure_of_single_generator_is_abelian() {
        let gen = elementary_rotation(2, 0, 1);
        let alg = lie_closure(&[gen], 2, &tol()).unwrap();
        assert_eq!(alg.dim(), 1);
    }

    #[test]
    fn cross_product_operators_close_to_so3() {
        let t = cross_product_form();
        let gens: Vec<Dmat> = (0..3).map(|i| t.basis_operator(i)).collect();
        let alg = lie_closure(&gens, 3, &tol()).unwrap();
        assert_eq!(alg.dim(), 3);
        // Direct span check against so(3).
        let so3 = catalog::build_so(3, &tol()).unwrap();
        for b in so3.basis() {
            assert!(alg.residual_off(b) < 1e-9);
        }
    }

    #[test]
    fn elementary_generators_close_to_so4() {
        let gens = vec![
            elementary_rotation(4, 0, 1),
            elementary_rotation(4, 1, 2),
            elementary_rotation(4, 2, 3),
        ];
        let alg = lie_closure(&gens, 4, &tol()).unwrap();
        assert_eq!(alg.dim(), 6);
    }

    #[test]
    fn ideal_closure_of_full_span_is_ambient() {
        let so3 = catalog::build_so(3, &tol()).unwrap();
        let ideal = ideal_closure(so3.basis(), &so3, &tol()).unwrap();
        assert_eq!(ideal.dim(), 3);
    }

    #[test]
    fn r4_form_operators_generate_so4_as_ideal() {
        // The operator span of an R^4 3-form is a copy of so(3); bracketing
        // against so(4) sweeps out the whole algebra.
        let t = ThreeForm::from_entries(4, &[(0, 1, 2, 1.0)]).unwrap();
        let gens: Vec<Dmat> = (0..4).map(|i| t.basis_operator(i)).collect();
        let so4 = catalog::build_so(4, &tol()).unwrap();
        let ideal = ideal_closure(&gens, &so4, &tol()).unwrap();
        assert_eq!(ideal.dim(), 6);
    }

    #[test]
    fn adjoint_so5_has_no_proper_ideal() {
        let sys = catalog::build_adjoint_system(catalog::CompactFamily::So, 5, &tol()).unwrap();
        let gens: Vec<Dmat> = sys.algebra().basis().to_vec();
        let ideal = ideal_closure(&gens[..1], sys.algebra(), &tol()).unwrap();
        assert_eq!(ideal.dim(), sys.algebra().dim());
    }

    #[test]
    fn ideal_closure_rejects_outside_generators() {
        let so3 = catalog::build_so(3, &tol()).unwrap();
        let mut sym = Dmat::zeros(3, 3);
        sym[(0, 0)] = 1.0;
        assert!(ideal_closure(&[sym], &so3, &tol()).is_err());
    }

    #[test]
    fn fixed_subspace_cases() {
        let so3 = catalog::build_so(3, &tol()).unwrap();
        assert_eq!(fixed_subspace(&so3, &tol()).unwrap().dim(), 0);

        let single = Subalgebra::from_span(3, &[elementary_rotation(3, 0, 1)], &tol()).unwrap();
        let fixed = fixed_subspace(&single, &tol()).unwrap();
        assert_eq!(fixed.dim(), 1);
        assert!(fixed.vectors()[0][2].abs() > 1.0 - 1e-12);

        let t = ThreeForm::from_entries(4, &[(1, 2, 3, 1.0)]).unwrap();
        let gens: Vec<Dmat> = (0..4).map(|i| t.basis_operator(i)).collect();
        let closure = lie_closure(&gens, 4, &tol()).unwrap();
        assert_eq!(fixed_subspace(&closure, &tol()).unwrap().dim(), 1);
    }

    #[test]
    fn centralizer_of_full_so_n_is_trivial() {
        let so4 = catalog::build_so(4, &tol()).unwrap();
        let c = centralizer(&so4, &SubspaceBasis::full(4), &tol()).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn centralizer_of_a_plane_rotation_is_itself() {
        let single = Subalgebra::from_span(2, &[elementary_rotation(2, 0, 1)], &tol()).unwrap();
        let c = centralizer(&single, &SubspaceBasis::full(2), &tol()).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn centralizer_of_adjoint_so5_vanishes() {
        let sys = catalog::build_adjoint_system(catalog::CompactFamily::So, 5, &tol()).unwrap();
        let c = centralizer(sys.algebra(), &SubspaceBasis::full(10), &tol()).unwrap();
        assert_eq!(c.len(), 0);
    }

    #[test]
    fn centralizer_elements_commute() {
        let single = Subalgebra::from_span(4, &[elementary_rotation(4, 0, 1)], &tol()).unwrap();
        let whole = SubspaceBasis::full(4);
        let c = centralizer(&single, &whole, &tol()).unwrap();
        assert!(!c.is_empty());
        for x in &c {
            for b in single.basis() {
                assert!(commutator(x, b).norm() <= 1e-9);
            }
        }
    }

    #[test]
    fn decomposition_of_so3_is_trivial() {
        let so3 = catalog::build_so(3, &tol()).unwrap();
        let dec = invariant_decomposition(&so3, &tol()).unwrap();
        assert!(dec.is_trivial());
        assert_eq!(dec.parts[0].dim(), 3);
    }

    #[test]
    fn decomposition_of_block_algebra() {
        // so(2) + so(3) block-diagonal inside so(5).
        let mut gens = vec![elementary_rotation(5, 0, 1)];
        for (i, j) in [(2, 3), (2, 4), (3, 4)] {
            gens.push(elementary_rotation(5, i, j));
        }
        let alg = Subalgebra::from_span(5, &gens, &tol()).unwrap();
        let dec = invariant_decomposition(&alg, &tol()).unwrap();
        assert_eq!(dec.fixed.dim(), 0);
        let mut dims: Vec<usize> = dec.parts.iter().map(|p| p.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![2, 3]);
        assert!(dec.irreducible.iter().all(|&f| f));
        let total: usize = dec.fixed.dim() + dec.parts.iter().map(|p| p.dim()).sum::<usize>();
        assert_eq!(total, 5);
    }

    #[test]
    fn decomposition_of_r4_closure() {
        let t = ThreeForm::from_entries(4, &[(0, 1, 2, 1.0)]).unwrap();
        let gens: Vec<Dmat> = (0..4).map(|i| t.basis_operator(i)).collect();
        let closure = lie_closure(&gens, 4, &tol()).unwrap();
        let dec = invariant_decomposition(&closure, &tol()).unwrap();
        assert_eq!(dec.fixed.dim(), 1);
        assert_eq!(dec.parts.len(), 1);
        assert_eq!(dec.parts[0].dim(), 3);
    }

    #[test]
    fn bracket_structure_of_cross_form() {
        let s = bracket_structure(&cross_product_form(), &tol(), DEFAULT_SAMPLES, DEFAULT_SEED)
            .unwrap();
        assert_eq!(s.center_dim, 0);
        assert!(s.is_simple);
        assert_eq!(s.rank, 1);
        assert_eq!(
            s.killing,
            KillingSignature {
                negative: 3,
                zero: 0,
                positive: 0
            }
        );
    }

    #[test]
    fn bracket_structure_of_r4_form() {
        let t = ThreeForm::from_entries(4, &[(0, 1, 2, 1.0)]).unwrap();
        let s = bracket_structure(&t, &tol(), DEFAULT_SAMPLES, DEFAULT_SEED).unwrap();
        assert_eq!(s.center_dim, 1);
        assert!(!s.is_simple);
        assert_eq!(s.killing.zero, 1);
        assert_eq!(s.killing.negative, 3);
    }

    #[test]
    fn bracket_structure_rejects_non_jacobi_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let t = ThreeForm::sample_unit(6, &mut rng);
        let err = bracket_structure(&t, &tol(), DEFAULT_SAMPLES, DEFAULT_SEED).unwrap_err();
        assert!(matches!(err, Error::NotABracket { .. }));
    }

    #[test]
    fn cohomogeneity_cases() {
        let so5 = catalog::build_so(5, &tol()).unwrap();
        assert_eq!(cohomogeneity(&so5, DEFAULT_SAMPLES, DEFAULT_SEED).unwrap(), 1);

        let sys = catalog::build_adjoint_system(catalog::CompactFamily::So, 5, &tol()).unwrap();
        assert_eq!(
            cohomogeneity(sys.algebra(), DEFAULT_SAMPLES, DEFAULT_SEED).unwrap(),
            2
        );

        assert_eq!(
            cohomogeneity(&Subalgebra::empty(4), DEFAULT_SAMPLES, DEFAULT_SEED).unwrap(),
            4
        );
    }

    #[test]
    fn closure_is_a_fixed_point() {
        let t = cross_product_form();
        let gens: Vec<Dmat> = (0..3).map(|i| t.basis_operator(i)).collect();
        let alg = lie_closure(&gens, 3, &tol()).unwrap();
        let again = lie_closure(alg.basis(), 3, &tol()).unwrap();
        assert_eq!(alg.dim(), again.dim());
        for b in again.basis() {
            assert!(alg.residual_off(b) < 1e-9);
        }
    }
}
