//! Skew-torsion holonomy systems: the triple itself, the derived 4-form, the
//! associated algebraic curvature tensor, averaging over subgroups, orbit
//! geometry, and the structural classification of a system.
//!
//! The central identities implemented here, for a system `[V, T, G]` with
//! operators `T_x`:
//!
//! - derived form: `O_{x,y} = [T_x, T_y] - T_{T_x y}`, a 4-form with values
//!   in the algebra; it vanishes iff `[x, y] = T_x y` satisfies Jacobi;
//! - curvature: `R_{v,w} = [T_v, T_w] - (2/3) O_{v,w}`, an algebraic
//!   curvature tensor with values in the algebra, first Bianchi identity by
//!   construction;
//! - scalar curvature: `s(R) = -sum_{i<j} |T_{e_i} e_j|^2`, strictly
//!   negative for a nonzero form.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exterior::{FourForm, ThreeForm};
use crate::lie::{
    bracket_structure, cohomogeneity, commutant_basis, commutator, invariant_decomposition,
    part_coords, part_matrix, MatrixPart, Subalgebra, DEFAULT_SAMPLES, DEFAULT_SEED,
};
use crate::numerics::{nullspace, SubspaceBasis, Tolerance};
use crate::{Dmat, Dvec};

/// A skew-torsion holonomy system: `R^n`, a totally skew form, and a
/// subalgebra of `so(n)` containing every operator `T_x`.
#[derive(Debug, Clone)]
pub struct SkewTorsionSystem {
    dim: usize,
    torsion: ThreeForm,
    algebra: Subalgebra,
}

impl SkewTorsionSystem {
    /// Validates the membership constraint `T_x in g` for every coordinate
    /// direction, within `tol.abs` relative to the size of the form.
    pub fn new(torsion: ThreeForm, algebra: Subalgebra, tol: &Tolerance) -> Result<Self> {
        if torsion.dim() != algebra.ambient_dim() {
            return Err(Error::DimensionMismatch {
                context: "skew-torsion system",
                expected: algebra.ambient_dim(),
                found: torsion.dim(),
            });
        }
        let sys = SkewTorsionSystem {
            dim: torsion.dim(),
            torsion,
            algebra,
        };
        let residual = sys.membership_residual();
        let allowed = tol.abs * (1.0 + sys.torsion.norm());
        if residual > allowed {
            return Err(Error::contract(format!(
                "torsion operators leave the algebra: residual {residual:.3e} exceeds {allowed:.3e}"
            )));
        }
        Ok(sys)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn torsion(&self) -> &ThreeForm {
        &self.torsion
    }

    pub fn algebra(&self) -> &Subalgebra {
        &self.algebra
    }

    /// Largest norm, over coordinate directions, of the component of `T_x`
    /// orthogonal to the algebra.
    pub fn membership_residual(&self) -> f64 {
        (0..self.dim)
            .map(|i| self.algebra.residual_off(&self.torsion.basis_operator(i)))
            .fold(0.0, f64::max)
    }
}

fn pair_rank(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Algebraic curvature tensor `R(i, j, k, l) = <R_{e_i, e_j} e_k, e_l>`.
#[derive(Debug, Clone)]
pub struct CurvatureTensor {
    dim: usize,
    coeffs: Vec<f64>,
}

impl CurvatureTensor {
    /// Validates the curvature symmetries: antisymmetry in the first and
    /// last index pairs, pair symmetry, and the first Bianchi identity.
    pub fn new(dim: usize, coeffs: Vec<f64>, tol: &Tolerance) -> Result<Self> {
        let tensor = CurvatureTensor::new_unchecked(dim, coeffs)?;
        let scale = 1.0 + tensor.max_abs();
        let checks = [
            ("first-pair antisymmetry", tensor.antisymmetry_defect_first()),
            ("last-pair antisymmetry", tensor.antisymmetry_defect_last()),
            ("pair symmetry", tensor.pair_symmetry_defect()),
            ("first Bianchi identity", bianchi_residual(&tensor)),
        ];
        for (what, defect) in checks {
            let allowed = 10.0 * tol.abs * scale;
            if defect > allowed {
                return Err(Error::inconsistency(
                    format!("curvature tensor {what}"),
                    defect,
                    allowed,
                ));
            }
        }
        Ok(tensor)
    }

    /// Skips invariant validation; meant for defect experiments such as
    /// perturbing a coefficient to watch the Bianchi residual move.
    pub fn new_unchecked(dim: usize, coeffs: Vec<f64>) -> Result<Self> {
        let expected = dim * dim * dim * dim;
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch {
                context: "curvature coefficient array",
                expected,
                found: coeffs.len(),
            });
        }
        Ok(CurvatureTensor { dim, coeffs })
    }

    pub fn zero(dim: usize) -> Self {
        CurvatureTensor {
            dim,
            coeffs: vec![0.0; dim * dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let n = self.dim;
        self.coeffs[((i * n + j) * n + k) * n + l]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, k: usize, l: usize, value: f64) {
        let n = self.dim;
        self.coeffs[((i * n + j) * n + k) * n + l] = value;
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, c| acc.max(c.abs()))
    }

    /// The operator `R_{x, y}` as a skew matrix.
    pub fn operator(&self, x: &Dvec, y: &Dvec) -> Dmat {
        let n = self.dim;
        let mut m = Dmat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let weight = x[i] * y[j];
                if weight == 0.0 {
                    continue;
                }
                for k in 0..n {
                    for l in 0..n {
                        m[(l, k)] += weight * self.get(i, j, k, l);
                    }
                }
            }
        }
        m
    }

    /// Scalar curvature `sum_{i<j} R(i, j, j, i)`.
    pub fn scalar(&self) -> f64 {
        let n = self.dim;
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += self.get(i, j, j, i);
            }
        }
        s
    }

    fn antisymmetry_defect_first(&self) -> f64 {
        let n = self.dim;
        let mut defect = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        defect = defect.max((self.get(i, j, k, l) + self.get(j, i, k, l)).abs());
                    }
                }
            }
        }
        defect
    }

    fn antisymmetry_defect_last(&self) -> f64 {
        let n = self.dim;
        let mut defect = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        defect = defect.max((self.get(i, j, k, l) + self.get(i, j, l, k)).abs());
                    }
                }
            }
        }
        defect
    }

    /// Defect of `<R_{v,w} z, u> = <R_{z,u} v, w>`.
    pub fn pair_symmetry_defect(&self) -> f64 {
        let n = self.dim;
        let mut defect = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        defect = defect.max((self.get(i, j, k, l) - self.get(k, l, i, j)).abs());
                    }
                }
            }
        }
        defect
    }

    /// Coefficients as a symmetric matrix over increasing index pairs.
    pub(crate) fn pair_matrix(&self) -> Dmat {
        let n = self.dim;
        let m = n * (n - 1) / 2;
        let mut out = Dmat::zeros(m, m);
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    for l in (k + 1)..n {
                        out[(pair_rank(n, i, j), pair_rank(n, k, l))] = self.get(i, j, k, l);
                    }
                }
            }
        }
        out
    }

    pub(crate) fn from_pair_matrix(dim: usize, m: &Dmat) -> Self {
        let n = dim;
        let mut tensor = CurvatureTensor::zero(n);
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    for l in (k + 1)..n {
                        let v = m[(pair_rank(n, i, j), pair_rank(n, k, l))];
                        tensor.set(i, j, k, l, v);
                        tensor.set(j, i, k, l, -v);
                        tensor.set(i, j, l, k, -v);
                        tensor.set(j, i, l, k, v);
                    }
                }
            }
        }
        tensor
    }
}

/// Raw operators `O_{e_i, e_j} = [T_i, T_j] - T_{T_i e_j}` for `i < j`.
fn derived_pair_operators(torsion: &ThreeForm) -> Vec<Vec<Dmat>> {
    let n = torsion.dim();
    let ops: Vec<Dmat> = (0..n).map(|i| torsion.basis_operator(i)).collect();
    let mut out = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            let image = ops[i].column(j).into_owned();
            let mapped = torsion
                .operator(&Dvec::from(image))
                .expect("dimension fixed by construction");
            out[i].push(commutator(&ops[i], &ops[j]) - mapped);
        }
    }
    out
}

/// Max-norm of the derived form `O_{x,y} = [T_x, T_y] - T_{T_x y}`;
/// it vanishes iff the bracket `[x, y] = T_x y` satisfies the Jacobi
/// identity.
pub fn jacobi_defect(torsion: &ThreeForm) -> f64 {
    let mut defect = 0.0f64;
    for row in derived_pair_operators(torsion) {
        for op in row {
            defect = defect.max(op.amax());
        }
    }
    defect
}

/// The derived form together with its construction defects, before any
/// thresholding; the report layer needs the raw residuals.
pub struct DerivedForm {
    pub form: FourForm,
    /// Worst disagreement between a pair-operator entry and the
    /// antisymmetrized coefficient.
    pub antisymmetry_defect: f64,
    /// Worst off-algebra component over all pair operators.
    pub membership_defect: f64,
}

/// Compute the derived form `<O_{x,y} z, w>` and its defects.
pub fn derived_form(sys: &SkewTorsionSystem) -> DerivedForm {
    let n = sys.dim();
    let pair_ops = derived_pair_operators(sys.torsion());
    let mut form = FourForm::zero(n);
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                for l in (k + 1)..n {
                    form.set(i, j, k, l, pair_ops[i][j - i - 1][(l, k)]);
                }
            }
        }
    }
    let mut antisymmetry_defect = 0.0f64;
    let mut membership_defect = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let op = &pair_ops[i][j - i - 1];
            membership_defect = membership_defect.max(sys.algebra().residual_off(op));
            for k in 0..n {
                for l in 0..n {
                    antisymmetry_defect =
                        antisymmetry_defect.max((op[(l, k)] - form.eval(i, j, k, l)).abs());
                }
            }
        }
    }
    DerivedForm {
        form,
        antisymmetry_defect,
        membership_defect,
    }
}

/// The derived 2-form with values in the algebra, stored through the 4-form
/// `<O_{x,y} z, w>`. Errors if total antisymmetry or algebra membership
/// break, which would indicate a corrupted system.
pub fn omega(sys: &SkewTorsionSystem, tol: &Tolerance) -> Result<FourForm> {
    let built = derived_form(sys);
    let scale = 1.0 + sys.torsion().norm().powi(2);
    let allowed = 10.0 * tol.abs * scale;
    if built.membership_defect > allowed {
        return Err(Error::inconsistency(
            "derived operators outside the algebra",
            built.membership_defect,
            allowed,
        ));
    }
    if built.antisymmetry_defect > allowed {
        return Err(Error::inconsistency(
            "derived form total antisymmetry",
            built.antisymmetry_defect,
            allowed,
        ));
    }
    Ok(built.form)
}

/// A curvature tensor before validation, with the worst off-algebra
/// component of its operators.
pub struct CurvatureBuild {
    pub tensor: CurvatureTensor,
    pub membership_defect: f64,
}

/// Assemble `R_{v,w} = [T_v, T_w] - (2/3) O_{v,w}` without thresholding.
pub fn curvature_raw(sys: &SkewTorsionSystem) -> CurvatureBuild {
    let n = sys.dim();
    let ops: Vec<Dmat> = (0..n).map(|i| sys.torsion().basis_operator(i)).collect();
    let pair_ops = derived_pair_operators(sys.torsion());
    let mut tensor = CurvatureTensor::zero(n);
    let mut membership_defect = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let r_op = commutator(&ops[i], &ops[j]) - &pair_ops[i][j - i - 1] * (2.0 / 3.0);
            membership_defect = membership_defect.max(sys.algebra().residual_off(&r_op));
            for k in 0..n {
                for l in 0..n {
                    tensor.set(i, j, k, l, r_op[(l, k)]);
                    tensor.set(j, i, k, l, -r_op[(l, k)]);
                }
            }
        }
    }
    CurvatureBuild {
        tensor,
        membership_defect,
    }
}

/// The algebraic curvature tensor `R_{v,w} = [T_v, T_w] - (2/3) O_{v,w}`,
/// with every operator value checked against the algebra.
pub fn curvature(sys: &SkewTorsionSystem, tol: &Tolerance) -> Result<CurvatureTensor> {
    let built = curvature_raw(sys);
    let scale = 1.0 + sys.torsion().norm().powi(2);
    let allowed = 10.0 * tol.abs * scale;
    if built.membership_defect > allowed {
        return Err(Error::inconsistency(
            "curvature operators outside the algebra",
            built.membership_defect,
            allowed,
        ));
    }
    CurvatureTensor::new(built.tensor.dim, built.tensor.coeffs, tol)
}

/// Largest cyclic sum `|R(i,j,k,l) + R(j,k,i,l) + R(k,i,j,l)|`.
pub fn bianchi_residual(tensor: &CurvatureTensor) -> f64 {
    let n = tensor.dim();
    let mut residual = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let cyclic = tensor.get(i, j, k, l)
                        + tensor.get(j, k, i, l)
                        + tensor.get(k, i, j, l);
                    residual = residual.max(cyclic.abs());
                }
            }
        }
    }
    residual
}

/// The torsion route to the scalar curvature:
/// `-sum_{i<j} |T_{e_i} e_j|^2`.
pub fn torsion_scalar(torsion: &ThreeForm) -> f64 {
    let n = torsion.dim();
    let mut out = 0.0;
    for i in 0..n {
        let op = torsion.basis_operator(i);
        for j in (i + 1)..n {
            out -= op.column(j).norm_squared();
        }
    }
    out
}

/// Scalar curvature, verified along two independent routes:
/// `sum_{i<j} R(i,j,j,i)` from the tensor, and
/// `-sum_{i<j} |T_{e_i} e_j|^2` directly from the torsion form.
pub fn scalar_curvature(sys: &SkewTorsionSystem, tol: &Tolerance) -> Result<f64> {
    let tensor = curvature(sys, tol)?;
    let from_tensor = tensor.scalar();
    let from_torsion = torsion_scalar(sys.torsion());
    let scale = 1.0 + from_torsion.abs();
    let mismatch = (from_tensor - from_torsion).abs();
    if mismatch > tol.abs * scale {
        return Err(Error::inconsistency(
            "scalar curvature route mismatch",
            mismatch,
            tol.abs * scale,
        ));
    }
    if sys.torsion().norm() > tol.abs && from_tensor >= 0.0 {
        return Err(Error::inconsistency(
            "scalar curvature sign (must be negative for nonzero torsion)",
            from_tensor,
            0.0,
        ));
    }
    Ok(from_tensor)
}

/// Largest coefficient norm of `B . T` over the algebra basis, with the form
/// unit-normalized first; zero (within `abs`) certifies the system symmetric
/// for the connected group.
pub fn symmetry_defect(sys: &SkewTorsionSystem) -> f64 {
    let unit = match sys.torsion().normalized() {
        Some(u) => u,
        None => return 0.0,
    };
    sys.algebra()
        .basis()
        .iter()
        .map(|b| {
            unit.so_action(b)
                .expect("algebra elements are skew with matching dimension")
                .norm()
        })
        .fold(0.0, f64::max)
}

/// Normal space of the orbit through `v`: the orthogonal complement of
/// `{Bv : B in algebra}`. Always contains `v` itself.
pub fn normal_space(algebra: &Subalgebra, v: &Dvec, tol: &Tolerance) -> Result<SubspaceBasis> {
    let n = algebra.ambient_dim();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            context: "normal_space base point",
            expected: n,
            found: v.len(),
        });
    }
    if v.norm() == 0.0 {
        return Err(Error::contract("normal_space requires a nonzero base point"));
    }
    let mut rows = Dmat::zeros(algebra.dim(), n);
    for (idx, b) in algebra.basis().iter().enumerate() {
        rows.set_row(idx, &(b * v).transpose());
    }
    nullspace(&rows, tol)
}

/// The isotropy algebra `{B in g : Bv = 0}`, orthonormalized and validated
/// as a subalgebra.
pub fn isotropy_algebra(
    algebra: &Subalgebra,
    v: &Dvec,
    tol: &Tolerance,
) -> Result<Subalgebra> {
    let n = algebra.ambient_dim();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            context: "isotropy_algebra base point",
            expected: n,
            found: v.len(),
        });
    }
    if v.norm() == 0.0 {
        return Err(Error::contract("isotropy_algebra requires a nonzero base point"));
    }
    if algebra.dim() == 0 {
        return Ok(Subalgebra::empty(n));
    }
    let mut images = Dmat::zeros(n, algebra.dim());
    for (idx, b) in algebra.basis().iter().enumerate() {
        images.set_column(idx, &(b * v));
    }
    let kernel = nullspace(&images, tol)?;
    let matrices: Vec<Dmat> = kernel
        .vectors()
        .iter()
        .map(|coeffs| algebra.from_coefficients(coeffs.as_slice()))
        .collect();
    Subalgebra::new(n, matrices, tol)
}

/// Whether the connected group acts transitively on the unit sphere,
/// detected by cohomogeneity one: a principal orbit of a compact connected
/// group that is open in the connected sphere is the whole sphere.
pub fn is_transitive(algebra: &Subalgebra, samples: usize, seed: u64) -> Result<bool> {
    if algebra.ambient_dim() < 2 {
        return Err(Error::contract(
            "transitivity on the sphere needs ambient dimension at least 2",
        ));
    }
    Ok(cohomogeneity(algebra, samples, seed)? == 1)
}

/// Jacobi operator `J_v(w) = R_{w, v} v` restricted to the orthogonal
/// complement of `v`, returned with the basis it is expressed in.
pub fn jacobi_operator(
    tensor: &CurvatureTensor,
    v: &Dvec,
    tol: &Tolerance,
) -> Result<(SubspaceBasis, Dmat)> {
    let n = tensor.dim();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            context: "jacobi_operator base point",
            expected: n,
            found: v.len(),
        });
    }
    if v.norm() == 0.0 {
        return Err(Error::contract("jacobi_operator requires a nonzero base point"));
    }
    let complement = nullspace(&Dmat::from_rows(&[v.transpose()]), tol)?;
    let d = complement.dim();
    let mut j_mat = Dmat::zeros(d, d);
    for (a, w) in complement.vectors().iter().enumerate() {
        let image = tensor.operator(w, v) * v;
        for (c, u) in complement.vectors().iter().enumerate() {
            j_mat[(c, a)] = image.dot(u);
        }
    }
    let defect = (&j_mat - j_mat.transpose()).norm();
    let allowed = 10.0 * tol.abs * (1.0 + tensor.max_abs());
    if defect > allowed {
        return Err(Error::inconsistency("Jacobi operator symmetry", defect, allowed));
    }
    Ok((complement, j_mat))
}

/// Matrix of the infinitesimal action of a skew `b` on 3-form coefficients.
fn so_action_matrix(b: &Dmat, dim: usize) -> Result<Dmat> {
    let coeff_count = crate::exterior::binom(dim, 3);
    let mut out = Dmat::zeros(coeff_count, coeff_count);
    let mut col = 0;
    for i in 0..dim {
        for j in (i + 1)..dim {
            for k in (j + 1)..dim {
                let basis_form = ThreeForm::from_entries(dim, &[(i, j, k, 1.0)])?;
                let acted = basis_form.so_action(b)?;
                for (row, c) in acted.coeffs().iter().enumerate() {
                    out[(row, col)] = *c;
                }
                col += 1;
            }
        }
    }
    Ok(out)
}

/// Average of a 3-form over the compact connected group generated by `h`,
/// computed as the orthogonal projection onto the joint kernel of the
/// infinitesimal actions (the two agree for orthogonal actions of compact
/// connected groups; no quadrature is involved).
pub fn average_form(form: &ThreeForm, h: &Subalgebra, tol: &Tolerance) -> Result<ThreeForm> {
    if form.dim() != h.ambient_dim() {
        return Err(Error::DimensionMismatch {
            context: "average_form",
            expected: form.dim(),
            found: h.ambient_dim(),
        });
    }
    if h.dim() == 0 {
        return Ok(form.clone());
    }
    let dim = form.dim();
    let coeff_count = crate::exterior::binom(dim, 3);
    let mut stacked = Dmat::zeros(h.dim() * coeff_count, coeff_count);
    for (idx, b) in h.basis().iter().enumerate() {
        stacked
            .view_mut((idx * coeff_count, 0), (coeff_count, coeff_count))
            .copy_from(&so_action_matrix(b, dim)?);
    }
    let kernel = nullspace(&stacked, tol)?;
    let coeffs = Dvec::from_vec(form.coeffs().to_vec());
    let projected = kernel.project(&coeffs);
    let entries: Vec<(usize, usize, usize, f64)> = {
        let mut out = Vec::new();
        let mut pos = 0;
        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in (j + 1)..dim {
                    out.push((i, j, k, projected[pos]));
                    pos += 1;
                }
            }
        }
        out
    };
    ThreeForm::from_entries(dim, &entries)
}

/// Matrix of the action of skew `b` on 2-form coefficients over increasing
/// pairs; skew-symmetric because the action is orthogonal.
fn pair_action_matrix(b: &Dmat, n: usize) -> Dmat {
    let m = n * (n - 1) / 2;
    let mut out = Dmat::zeros(m, m);
    for a in 0..n {
        for c in (a + 1)..n {
            let col = pair_rank(n, a, c);
            // (B . w_{ac})(p, q) = -w_{ac}(Bp, q) - w_{ac}(p, Bq)
            for p in 0..n {
                for q in (p + 1)..n {
                    let mut v = 0.0;
                    // -[B(a,p) d_{qc} - B(c,p) d_{qa}] - [d_{pa} B(c,q) - d_{pc} B(a,q)]
                    if q == c {
                        v -= b[(a, p)];
                    }
                    if q == a {
                        v += b[(c, p)];
                    }
                    if p == a {
                        v -= b[(c, q)];
                    }
                    if p == c {
                        v += b[(a, q)];
                    }
                    if v != 0.0 {
                        out[(pair_rank(n, p, q), col)] = v;
                    }
                }
            }
        }
    }
    out
}

/// Average of a curvature tensor over the group of `algebra`: orthogonal
/// projection of the coefficient vector onto the joint kernel of the induced
/// infinitesimal actions. Preserves the scalar curvature.
pub fn average_curvature(
    tensor: &CurvatureTensor,
    algebra: &Subalgebra,
    tol: &Tolerance,
) -> Result<CurvatureTensor> {
    let n = tensor.dim();
    if algebra.ambient_dim() != n {
        return Err(Error::DimensionMismatch {
            context: "average_curvature",
            expected: n,
            found: algebra.ambient_dim(),
        });
    }
    if algebra.dim() == 0 {
        return Ok(tensor.clone());
    }
    let m = n * (n - 1) / 2;
    let pair_actions: Vec<Dmat> = algebra
        .basis()
        .iter()
        .map(|b| pair_action_matrix(b, n))
        .collect();
    // In pair coordinates the tensor is a symmetric matrix and the induced
    // action is the commutator with the (skew) pair action, so the invariant
    // tensors form the symmetric commutant.
    let kernel = commutant_basis(&pair_actions, m, MatrixPart::Symmetric, tol)?;
    let matrix = tensor.pair_matrix();
    let coords = part_coords(&matrix, MatrixPart::Symmetric);
    let mut projected = Dvec::zeros(coords.len());
    for k in &kernel {
        let k_coords = part_coords(k, MatrixPart::Symmetric);
        projected += &k_coords * coords.dot(&k_coords);
    }
    let averaged_matrix = part_matrix(m, &projected, MatrixPart::Symmetric);
    let averaged = CurvatureTensor::from_pair_matrix(n, &averaged_matrix);

    let scale = 1.0 + tensor.max_abs();
    for (idx, a) in pair_actions.iter().enumerate() {
        let defect = commutator(a, &averaged_matrix).norm();
        if defect > 10.0 * tol.abs * scale {
            return Err(Error::inconsistency(
                format!("averaged curvature not invariant under element {idx}"),
                defect,
                10.0 * tol.abs * scale,
            ));
        }
    }
    let s_defect = (averaged.scalar() - tensor.scalar()).abs();
    let allowed = tol.abs * (1.0 + tensor.scalar().abs());
    if s_defect > allowed {
        return Err(Error::inconsistency(
            "averaging changed the scalar curvature",
            s_defect,
            allowed,
        ));
    }
    CurvatureTensor::new(n, averaged.coeffs, tol)
}

/// Structural branch a system lands in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// The torsion form vanishes; nothing to classify.
    DegenerateThetaZero,
    /// The algebra does not act irreducibly.
    Reducible,
    /// The algebra is all of `so(n)`.
    FullOrthogonal,
    /// Irreducible, not full: symmetric, non-transitive, and the bracket
    /// `[x, y] = T_x y` makes `V` a simple orthogonal Lie algebra acted on
    /// by its own adjoint group, with the form unique up to scale.
    SymmetricAdjoint,
    /// An irreducible non-full system failed one of the structural
    /// conclusions; this flags a bug or a tolerance failure, never a valid
    /// configuration.
    Inconsistent,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::DegenerateThetaZero => "degenerate_theta_zero",
            Branch::Reducible => "reducible",
            Branch::FullOrthogonal => "full_orthogonal",
            Branch::SymmetricAdjoint => "symmetric_adjoint",
            Branch::Inconsistent => "inconsistent",
        }
    }
}

impl std::str::FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degenerate_theta_zero" => Ok(Branch::DegenerateThetaZero),
            "reducible" => Ok(Branch::Reducible),
            "full_orthogonal" => Ok(Branch::FullOrthogonal),
            "symmetric_adjoint" => Ok(Branch::SymmetricAdjoint),
            "inconsistent" => Ok(Branch::Inconsistent),
            other => Err(Error::contract(format!("unknown branch name '{other}'"))),
        }
    }
}

/// Classification result: the branch plus every residual and dimension the
/// decision was derived from.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Verdict {
    pub branch: Branch,
    pub evidence: BTreeMap<String, f64>,
    /// Names of the failed structural checks; empty unless the branch is
    /// `Inconsistent`.
    pub failures: Vec<String>,
}

/// Knobs for the sampling decisions inside [`classify`].
#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub tol: Tolerance,
    pub samples: usize,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            tol: Tolerance::default(),
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

/// Classify a system into its structural branch.
///
/// Decision sequence: zero form, then reducibility, then the full orthogonal
/// algebra; what remains is an irreducible non-full system, which must be
/// symmetric, non-transitive, carry a simple bracket of rank at least two
/// (rank one only in dimension three, where the 3-form is unique up to
/// scale), and admit a one-dimensional space of admissible torsion forms.
/// Any failure of those conclusions is reported as `Inconsistent` with the
/// failing residuals named.
pub fn classify(sys: &SkewTorsionSystem, opts: &ClassifyOptions) -> Result<Verdict> {
    let tol = &opts.tol;
    let n = sys.dim();
    let mut evidence = BTreeMap::new();
    evidence.insert("dimension".to_string(), n as f64);
    evidence.insert("algebra_dim".to_string(), sys.algebra().dim() as f64);
    evidence.insert(
        "membership_residual".to_string(),
        sys.membership_residual(),
    );

    let theta_norm = sys.torsion().norm();
    evidence.insert("theta_norm".to_string(), theta_norm);
    if tol.decide_zero("torsion form norm", theta_norm)? {
        return Ok(Verdict {
            branch: Branch::DegenerateThetaZero,
            evidence,
            failures: Vec::new(),
        });
    }

    let decomposition = invariant_decomposition(sys.algebra(), tol)?;
    evidence.insert(
        "fixed_subspace_dim".to_string(),
        decomposition.fixed.dim() as f64,
    );
    evidence.insert(
        "irreducible_parts".to_string(),
        decomposition.parts.len() as f64,
    );
    if !decomposition.is_trivial() {
        return Ok(Verdict {
            branch: Branch::Reducible,
            evidence,
            failures: Vec::new(),
        });
    }

    if sys.algebra().dim() == n * (n - 1) / 2 {
        return Ok(Verdict {
            branch: Branch::FullOrthogonal,
            evidence,
            failures: Vec::new(),
        });
    }

    // Irreducible with g != so(n): verify the structural conclusions.
    let mut failures = Vec::new();
    let unit = sys
        .torsion()
        .normalized()
        .expect("nonzero by the branch above");

    let sym_defect = symmetry_defect(sys);
    evidence.insert("symmetry_defect".to_string(), sym_defect);
    if !tol.decide_zero("symmetry defect", sym_defect)? {
        failures.push("symmetry_defect".to_string());
    }

    let cohom = cohomogeneity(sys.algebra(), opts.samples, opts.seed)?;
    evidence.insert("cohomogeneity".to_string(), cohom as f64);
    if cohom == 1 {
        failures.push("transitive_but_not_full".to_string());
    }

    match bracket_structure(&unit, tol, opts.samples, opts.seed) {
        Ok(structure) => {
            evidence.insert("bracket_center_dim".to_string(), structure.center_dim as f64);
            evidence.insert(
                "bracket_simple".to_string(),
                if structure.is_simple { 1.0 } else { 0.0 },
            );
            evidence.insert("bracket_rank".to_string(), structure.rank as f64);
            evidence.insert(
                "killing_negative".to_string(),
                structure.killing.negative as f64,
            );
            evidence.insert("killing_zero".to_string(), structure.killing.zero as f64);
            evidence.insert(
                "killing_positive".to_string(),
                structure.killing.positive as f64,
            );
            if !structure.is_simple {
                failures.push("bracket_not_simple".to_string());
            }
            if structure.rank < 2 && n != 3 {
                failures.push("bracket_rank_below_two".to_string());
            }
        }
        Err(Error::NotABracket { defect, .. }) => {
            evidence.insert("jacobi_defect".to_string(), defect);
            failures.push("bracket_fails_jacobi".to_string());
        }
        Err(other) => return Err(other),
    }

    let form_space = crate::catalog::solve_form_space(sys.algebra(), tol)?;
    evidence.insert("form_space_dim".to_string(), form_space.len() as f64);
    if form_space.len() != 1 {
        failures.push("form_space_dim_not_one".to_string());
    }

    if failures.is_empty() {
        Ok(Verdict {
            branch: Branch::SymmetricAdjoint,
            evidence,
            failures,
        })
    } else {
        Ok(Verdict {
            branch: Branch::Inconsistent,
            evidence,
            failures,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, CompactFamily};
    use crate::exterior::cross_product_form;
    use crate::numerics::{expm_skew, sample_unit_vectors};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn cross_system() -> SkewTorsionSystem {
        catalog::cross_product_system(&tol()).unwrap()
    }

    fn so5_adjoint() -> SkewTorsionSystem {
        catalog::build_adjoint_system(CompactFamily::So, 5, &tol()).unwrap()
    }

    fn r4_system(seed: u64) -> SkewTorsionSystem {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = ThreeForm::sample_unit(4, &mut rng);
        let so4 = catalog::build_so(4, &tol()).unwrap();
        SkewTorsionSystem::new(t, so4, &tol()).unwrap()
    }

    #[test]
    fn membership_rejects_foreign_operators() {
        // Cross-product form against a single plane rotation: T_x escapes.
        let single = Subalgebra::from_span(
            3,
            &[catalog::build_so(3, &tol()).unwrap().basis()[0].clone()],
            &tol(),
        )
        .unwrap();
        assert!(SkewTorsionSystem::new(cross_product_form(), single, &tol()).is_err());
    }

    #[test]
    fn omega_vanishes_on_lie_brackets() {
        // Cross product: dimension 3 has no 4-forms and Jacobi holds.
        let sys = cross_system();
        assert_eq!(omega(&sys, &tol()).unwrap().max_abs(), 0.0);
        assert!(jacobi_defect(sys.torsion()) < 1e-14);

        // Any 3-form on R^4 satisfies T_x . T = 0.
        for seed in 0..5 {
            let sys = r4_system(seed);
            assert!(omega(&sys, &tol()).unwrap().max_abs() < 1e-12);
            assert!(jacobi_defect(sys.torsion()) < 1e-12);
        }

        // Adjoint systems: Jacobi identity of the underlying algebra.
        let sys = so5_adjoint();
        assert!(omega(&sys, &tol()).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn random_forms_in_dimension_six_fail_jacobi() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..5 {
            let t = ThreeForm::sample_unit(6, &mut rng);
            assert!(jacobi_defect(&t) > 0.01);
        }
    }

    #[test]
    fn jacobi_defect_matches_omega_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let t = ThreeForm::sample_unit(5, &mut rng);
        let so5 = catalog::build_so(5, &tol()).unwrap();
        let sys = SkewTorsionSystem::new(t.clone(), so5, &tol()).unwrap();
        let o = omega(&sys, &tol()).unwrap();
        let defect = jacobi_defect(&t);
        assert!((defect - o.max_abs()).abs() <= 10.0 * tol().abs * (1.0 + defect));
    }

    #[test]
    fn cross_curvature_is_the_cross_operator() {
        // With zero derived form, R_{v,w} = T_{v x w}.
        let sys = cross_system();
        let r = curvature(&sys, &tol()).unwrap();
        let t = sys.torsion();
        for (v, w) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let mut vv = Dvec::zeros(3);
            vv[v] = 1.0;
            let mut ww = Dvec::zeros(3);
            ww[w] = 1.0;
            let cross = Dvec::from_vec(vec![
                vv[1] * ww[2] - vv[2] * ww[1],
                vv[2] * ww[0] - vv[0] * ww[2],
                vv[0] * ww[1] - vv[1] * ww[0],
            ]);
            let expected = t.operator(&cross).unwrap();
            let got = r.operator(&vv, &ww);
            assert!((expected - got).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_torsion_gives_zero_curvature() {
        let so3 = catalog::build_so(3, &tol()).unwrap();
        let sys = SkewTorsionSystem::new(ThreeForm::zero(3), so3, &tol()).unwrap();
        let r = curvature(&sys, &tol()).unwrap();
        assert_eq!(r.max_abs(), 0.0);
        assert_eq!(scalar_curvature(&sys, &tol()).unwrap(), 0.0);
    }

    #[test]
    fn curvature_operators_stay_in_the_algebra() {
        let sys = so5_adjoint();
        let r = curvature(&sys, &tol()).unwrap();
        for v in sample_unit_vectors(10, 3, 5) {
            for w in sample_unit_vectors(10, 3, 17) {
                let op = r.operator(&v, &w);
                assert!(sys.algebra().residual_off(&op) < 1e-9);
            }
        }
    }

    #[test]
    fn bianchi_residual_reacts_to_corruption() {
        let sys = so5_adjoint();
        let r = curvature(&sys, &tol()).unwrap();
        assert!(bianchi_residual(&r) < 1e-12);

        let mut coeffs = r.coeffs.clone();
        coeffs[(10 + 2) * 10 + 3] += 1.0; // entry (0, 1, 2, 3)
        let corrupted = CurvatureTensor::new_unchecked(10, coeffs).unwrap();
        assert!(bianchi_residual(&corrupted) >= 0.3);
    }

    #[test]
    fn scalar_curvature_of_cross_system_is_minus_three() {
        let s = scalar_curvature(&cross_system(), &tol()).unwrap();
        assert!((s + 3.0).abs() < 1e-12);
    }

    #[test]
    fn scalar_curvature_scales_quadratically() {
        let sys = cross_system();
        let scaled = SkewTorsionSystem::new(
            sys.torsion().scaled(2.0),
            sys.algebra().clone(),
            &tol(),
        )
        .unwrap();
        let s1 = scalar_curvature(&sys, &tol()).unwrap();
        let s4 = scalar_curvature(&scaled, &tol()).unwrap();
        assert!((s4 - 4.0 * s1).abs() < 1e-10);
    }

    #[test]
    fn symmetry_defect_separates_the_examples() {
        assert!(symmetry_defect(&so5_adjoint()) < 1e-9);
        for seed in 0..5 {
            assert!(symmetry_defect(&r4_system(seed)) > 0.1);
        }
        let so3 = catalog::build_so(3, &tol()).unwrap();
        let zero = SkewTorsionSystem::new(ThreeForm::zero(3), so3, &tol()).unwrap();
        assert_eq!(symmetry_defect(&zero), 0.0);
    }

    #[test]
    fn symmetric_systems_satisfy_jacobi() {
        // B . T = 0 for all B in g, and T_z in g, forces the Jacobi identity.
        let sys = so5_adjoint();
        assert!(symmetry_defect(&sys) <= tol().abs);
        assert!(jacobi_defect(sys.torsion()) <= 10.0 * tol().abs);
    }

    #[test]
    fn normal_space_of_full_so_n_is_the_line() {
        let so4 = catalog::build_so(4, &tol()).unwrap();
        for v in sample_unit_vectors(4, 3, 2) {
            let w = normal_space(&so4, &v, &tol()).unwrap();
            assert_eq!(w.dim(), 1);
            assert!(w.residual_off(&v) < 1e-9);
        }
    }

    #[test]
    fn normal_space_of_empty_algebra_is_everything() {
        let empty = Subalgebra::empty(4);
        let v = Dvec::from_vec(vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(normal_space(&empty, &v, &tol()).unwrap().dim(), 4);
    }

    #[test]
    fn normal_space_rejects_zero_vector() {
        let so3 = catalog::build_so(3, &tol()).unwrap();
        assert!(normal_space(&so3, &Dvec::zeros(3), &tol()).is_err());
    }

    #[test]
    fn normal_space_is_the_bracket_centralizer_for_adjoint_systems() {
        let sys = so5_adjoint();
        for v in sample_unit_vectors(10, 5, 31) {
            let w = normal_space(sys.algebra(), &v, &tol()).unwrap();
            // Independent route: kernel of the operator T_v.
            let c = nullspace(&sys.torsion().operator(&v).unwrap(), &tol()).unwrap();
            assert!(w.distance(&c) < 1e-8);
        }
    }

    #[test]
    fn isotropy_algebra_dimensions() {
        let so3 = catalog::build_so(3, &tol()).unwrap();
        let e3 = Dvec::from_vec(vec![0.0, 0.0, 1.0]);
        assert_eq!(isotropy_algebra(&so3, &e3, &tol()).unwrap().dim(), 1);

        let so5 = catalog::build_so(5, &tol()).unwrap();
        for v in sample_unit_vectors(5, 2, 3) {
            let iso = isotropy_algebra(&so5, &v, &tol()).unwrap();
            assert_eq!(iso.dim(), 6); // so(4)
            for b in iso.basis() {
                assert!((b * &v).norm() < 1e-9);
            }
        }
        assert!(isotropy_algebra(&so5, &Dvec::zeros(5), &tol()).is_err());
    }

    #[test]
    fn normal_directions_fix_the_base_point() {
        // For xi normal to the orbit, T_xi v = 0, so T_xi lies in the
        // isotropy algebra.
        let sys = so5_adjoint();
        for v in sample_unit_vectors(10, 4, 7) {
            let w = normal_space(sys.algebra(), &v, &tol()).unwrap();
            for xi in w.vectors() {
                let op = sys.torsion().operator(xi).unwrap();
                assert!((op * &v).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn transitivity_detection() {
        let so4 = catalog::build_so(4, &tol()).unwrap();
        assert!(is_transitive(&so4, DEFAULT_SAMPLES, DEFAULT_SEED).unwrap());
        let sys = so5_adjoint();
        assert!(!is_transitive(sys.algebra(), DEFAULT_SAMPLES, DEFAULT_SEED).unwrap());
        assert!(!is_transitive(&Subalgebra::empty(4), DEFAULT_SAMPLES, DEFAULT_SEED).unwrap());
    }

    #[test]
    fn jacobi_operator_of_cross_system_is_minus_identity() {
        let sys = cross_system();
        let r = curvature(&sys, &tol()).unwrap();
        for v in sample_unit_vectors(3, 5, 11) {
            let (basis, j) = jacobi_operator(&r, &v, &tol()).unwrap();
            assert_eq!(basis.dim(), 2);
            assert!((j + Dmat::identity(2, 2)).norm() < 1e-9);
        }
    }

    #[test]
    fn jacobi_operator_of_zero_torsion_vanishes() {
        let so3 = catalog::build_so(3, &tol()).unwrap();
        let sys = SkewTorsionSystem::new(ThreeForm::zero(3), so3, &tol()).unwrap();
        let r = curvature(&sys, &tol()).unwrap();
        let v = Dvec::from_vec(vec![0.0, 1.0, 0.0]);
        let (_, j) = jacobi_operator(&r, &v, &tol()).unwrap();
        assert_eq!(j.norm(), 0.0);
    }

    #[test]
    fn average_form_fixes_invariant_forms() {
        let sys = so5_adjoint();
        let averaged = average_form(sys.torsion(), sys.algebra(), &tol()).unwrap();
        let defect = averaged
            .add(&sys.torsion().scaled(-1.0))
            .unwrap()
            .norm();
        assert!(defect < 1e-9, "moved an invariant form by {defect:.3e}");
    }

    #[test]
    fn averaged_form_is_tangent_to_the_fixed_set() {
        // Sigma = fixed set of h = span{ad_v} for a non-generic v; for
        // w1, w2 in Sigma the averaged form keeps T_{w1} w2 inside Sigma.
        let sys = so5_adjoint();
        let ad_v = sys.torsion().operator(&basis_vec(10, 0)).unwrap();
        let h = Subalgebra::from_span(10, &[ad_v], &tol()).unwrap();
        let sigma = crate::lie::fixed_subspace(&h, &tol()).unwrap();
        assert!(sigma.dim() > 0 && sigma.dim() < 10);
        let averaged = average_form(sys.torsion(), &h, &tol()).unwrap();
        let complement = sigma.complement(&tol()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let w1 = random_combination(sigma.vectors(), &mut rng);
            let w2 = random_combination(sigma.vectors(), &mut rng);
            let off = random_combination(complement.vectors(), &mut rng);
            let moved = averaged.operator(&w1).unwrap() * &w2;
            assert!(moved.dot(&off).abs() < 1e-9);
        }
    }

    fn basis_vec(n: usize, i: usize) -> Dvec {
        let mut v = Dvec::zeros(n);
        v[i] = 1.0;
        v
    }

    fn random_combination(vectors: &[Dvec], rng: &mut impl Rng) -> Dvec {
        let mut out = Dvec::zeros(vectors[0].len());
        for v in vectors {
            out += v * rng.random_range(-1.0..1.0);
        }
        out
    }

    #[test]
    fn average_curvature_fixes_invariant_tensors() {
        let sys = cross_system();
        let r = curvature(&sys, &tol()).unwrap();
        let averaged = average_curvature(&r, sys.algebra(), &tol()).unwrap();
        let mut defect = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        defect =
                            defect.max((averaged.get(i, j, k, l) - r.get(i, j, k, l)).abs());
                    }
                }
            }
        }
        assert!(defect < 1e-9);
    }

    #[test]
    fn average_curvature_preserves_scalar_on_random_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let t = ThreeForm::sample_unit(5, &mut rng);
        let so5 = catalog::build_so(5, &tol()).unwrap();
        let sys = SkewTorsionSystem::new(t, so5, &tol()).unwrap();
        let r = curvature(&sys, &tol()).unwrap();
        let averaged = average_curvature(&r, sys.algebra(), &tol()).unwrap();
        assert!((averaged.scalar() - r.scalar()).abs() < 1e-9);
        for b in sys.algebra().basis() {
            let defect = commutator(&pair_action_matrix(b, 5), &averaged.pair_matrix()).norm();
            assert!(defect < 1e-9);
        }
    }

    #[test]
    fn equivariance_keeps_membership() {
        // Pulling the form back along exp(B), B in g, stays inside g.
        let sys = so5_adjoint();
        let b = sys.algebra().basis()[2].clone();
        let g = expm_skew(&(b * 0.7)).unwrap();
        let pulled = sys.torsion().pullback(&g).unwrap();
        let moved = SkewTorsionSystem::new(pulled, sys.algebra().clone(), &tol());
        assert!(moved.is_ok());
    }

    #[test]
    fn classify_the_three_model_cases() {
        let opts = ClassifyOptions::default();

        let verdict = classify(&cross_system(), &opts).unwrap();
        assert_eq!(verdict.branch, Branch::FullOrthogonal);

        let verdict = classify(&so5_adjoint(), &opts).unwrap();
        assert_eq!(verdict.branch, Branch::SymmetricAdjoint);
        assert_eq!(verdict.evidence["bracket_rank"], 2.0);
        assert_eq!(verdict.evidence["form_space_dim"], 1.0);

        // R^4 form over the closure of its own operators: reducible.
        let t = ThreeForm::from_entries(4, &[(0, 1, 2, 1.0)]).unwrap();
        let gens: Vec<Dmat> = (0..4).map(|i| t.basis_operator(i)).collect();
        let closure = crate::lie::lie_closure(&gens, 4, &tol()).unwrap();
        let sys = SkewTorsionSystem::new(t, closure, &tol()).unwrap();
        let verdict = classify(&sys, &opts).unwrap();
        assert_eq!(verdict.branch, Branch::Reducible);
        assert_eq!(verdict.evidence["fixed_subspace_dim"], 1.0);
    }

    #[test]
    fn classify_zero_form() {
        let so3 = catalog::build_so(3, &tol()).unwrap();
        let sys = SkewTorsionSystem::new(ThreeForm::zero(3), so3, &tol()).unwrap();
        let verdict = classify(&sys, &ClassifyOptions::default()).unwrap();
        assert_eq!(verdict.branch, Branch::DegenerateThetaZero);
    }

    #[test]
    fn classify_reports_the_inconclusive_band() {
        // Torsion norm 1e-7 sits between abs and 1e3 * abs.
        let so3 = catalog::build_so(3, &tol()).unwrap();
        let t = ThreeForm::from_entries(3, &[(0, 1, 2, 1e-7)]).unwrap();
        let sys = SkewTorsionSystem::new(t, so3, &tol()).unwrap();
        let err = classify(&sys, &ClassifyOptions::default()).unwrap_err();
        assert!(matches!(err, Error::InconclusiveDefect { .. }));
    }
}
