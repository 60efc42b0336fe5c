//! Tolerance-aware dense linear algebra primitives.
//!
//! Everything else in the crate is built on the four operations here:
//! [`orthonormalize`], [`nullspace`], [`sym_eigen`] and [`expm_skew`].
//! Rank decisions use a singular-value gap instead of a fixed cutoff and
//! raise [`Error::DegenerateRank`] when the gap is ambiguous.

use nalgebra::SymmetricEigen;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::{Dmat, Dvec};

/// Singular values straddling the cutoff must be separated by this factor,
/// otherwise the rank is reported as ambiguous.
pub const RANK_GAP_FACTOR: f64 = 1e3;

/// Relative and absolute thresholds used by every residual check.
///
/// The defaults leave several orders of magnitude of headroom for the
/// catalog, whose matrices have integer or small-rational entries.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerance {
    /// Relative threshold, used against the largest singular value.
    pub rel: f64,
    /// Absolute threshold, used against residual norms.
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-9,
            abs: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Result<Self> {
        if !(rel.is_finite() && rel > 0.0 && abs.is_finite() && abs > 0.0) {
            return Err(Error::contract(format!(
                "tolerance thresholds must be finite and positive, got rel={rel}, abs={abs}"
            )));
        }
        Ok(Tolerance { rel, abs })
    }

    /// Same threshold for both fields, as set by the command-line `--tol`.
    pub fn uniform(tol: f64) -> Result<Self> {
        Tolerance::new(tol, tol)
    }

    /// Decide whether `value` is zero (below `abs`), definitely nonzero
    /// (above `1e3 * abs`), or in the inconclusive band in between.
    pub fn decide_zero(&self, what: &str, value: f64) -> Result<bool> {
        let lo = self.abs;
        let hi = RANK_GAP_FACTOR * self.abs;
        if value <= lo {
            Ok(true)
        } else if value >= hi {
            Ok(false)
        } else {
            Err(Error::InconclusiveDefect {
                what: what.to_string(),
                value,
                zero_below: lo,
                nonzero_above: hi,
            })
        }
    }
}

/// An orthonormal basis of a subspace of `R^ambient_dim`.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<Dvec>,
}

impl SubspaceBasis {
    /// Validates unit norms and pairwise orthogonality within `tol.abs`.
    pub fn new(ambient_dim: usize, vectors: Vec<Dvec>, tol: &Tolerance) -> Result<Self> {
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    context: "SubspaceBasis vector",
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
        }
        for (i, v) in vectors.iter().enumerate() {
            for (j, w) in vectors.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                let defect = (v.dot(w) - expected).abs();
                if defect > 10.0 * tol.abs {
                    return Err(Error::contract(format!(
                        "basis vectors {i},{j} not orthonormal: inner-product defect {defect:.3e}"
                    )));
                }
            }
        }
        Ok(SubspaceBasis {
            ambient_dim,
            vectors,
        })
    }

    /// The whole ambient space, spanned by the coordinate vectors.
    pub fn full(ambient_dim: usize) -> Self {
        let vectors = (0..ambient_dim)
            .map(|i| Dvec::from_fn(ambient_dim, |r, _| if r == i { 1.0 } else { 0.0 }))
            .collect();
        SubspaceBasis {
            ambient_dim,
            vectors,
        }
    }

    /// The zero subspace.
    pub fn empty(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the spanned subspace.
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Dvec] {
        &self.vectors
    }

    /// Matrix whose columns are the basis vectors (`ambient_dim x dim`).
    pub fn as_matrix(&self) -> Dmat {
        let mut m = Dmat::zeros(self.ambient_dim, self.vectors.len());
        for (j, v) in self.vectors.iter().enumerate() {
            m.set_column(j, v);
        }
        m
    }

    /// Orthogonal projection of `v` onto the subspace.
    pub fn project(&self, v: &Dvec) -> Dvec {
        let mut out = Dvec::zeros(self.ambient_dim);
        for b in &self.vectors {
            out += b * v.dot(b);
        }
        out
    }

    /// Norm of the component of `v` orthogonal to the subspace.
    pub fn residual_off(&self, v: &Dvec) -> f64 {
        (v - self.project(v)).norm()
    }

    /// Orthonormal basis of the orthogonal complement.
    pub fn complement(&self, tol: &Tolerance) -> Result<SubspaceBasis> {
        if self.vectors.is_empty() {
            return Ok(SubspaceBasis::full(self.ambient_dim));
        }
        let mut rows = Dmat::zeros(self.vectors.len(), self.ambient_dim);
        for (i, v) in self.vectors.iter().enumerate() {
            rows.set_row(i, &v.transpose());
        }
        nullspace(&rows, tol)
    }

    /// Frobenius distance between the orthogonal projectors of the two
    /// subspaces; zero iff they span the same space.
    pub fn distance(&self, other: &SubspaceBasis) -> f64 {
        let pa = self.as_matrix() * self.as_matrix().transpose();
        let pb = other.as_matrix() * other.as_matrix().transpose();
        (pa - pb).norm()
    }
}

/// Decide how many singular values to keep.
///
/// Kept iff `sigma > max(rel * sigma_max, abs)`; the `abs` floor is what
/// makes kernels satisfy the residual contract `|A k| <= abs`. When kept and
/// dropped values are separated by less than [`RANK_GAP_FACTOR`] the rank is
/// ambiguous and an error names the borderline values.
fn decide_rank(singular: &[f64], tol: &Tolerance) -> Result<usize> {
    if singular.is_empty() {
        return Ok(0);
    }
    let sigma_max = singular[0];
    let cutoff = (tol.rel * sigma_max).max(tol.abs);
    let rank = singular.iter().take_while(|&&s| s > cutoff).count();
    if rank > 0 && rank < singular.len() {
        let kept = singular[rank - 1];
        let dropped = singular[rank];
        let ratio = if dropped == 0.0 {
            f64::INFINITY
        } else {
            kept / dropped
        };
        if ratio < RANK_GAP_FACTOR {
            return Err(Error::DegenerateRank {
                kept,
                dropped,
                ratio,
            });
        }
    }
    Ok(rank)
}

/// Orthonormal basis of the span of `vectors`, rank decided by the
/// singular-value gap.
pub fn orthonormalize(
    ambient_dim: usize,
    vectors: &[Dvec],
    tol: &Tolerance,
) -> Result<SubspaceBasis> {
    if vectors.is_empty() {
        return Ok(SubspaceBasis::empty(ambient_dim));
    }
    for v in vectors {
        if v.len() != ambient_dim {
            return Err(Error::DimensionMismatch {
                context: "orthonormalize input",
                expected: ambient_dim,
                found: v.len(),
            });
        }
        if !v.iter().all(|x| x.is_finite()) {
            return Err(Error::contract("orthonormalize input has non-finite entries"));
        }
    }
    let mut m = Dmat::zeros(ambient_dim, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        m.set_column(j, v);
    }
    let svd = m.svd(true, false);
    let mut sigma: Vec<f64> = svd.singular_values.iter().copied().collect();
    sigma.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let rank = decide_rank(&sigma, tol)?;
    let u = svd.u.expect("svd requested u");
    // nalgebra returns singular values unsorted only in rare branches; map
    // columns through the sort order to stay aligned.
    let order = sort_order(svd.singular_values.as_slice());
    let basis = (0..rank)
        .map(|r| Dvec::from(u.column(order[r]).into_owned()))
        .collect();
    SubspaceBasis::new(ambient_dim, basis, tol)
}

fn sort_order(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap());
    idx
}

/// Orthonormal basis of the kernel of `a`, with `|a k| <= abs` for every
/// returned vector `k`.
pub fn nullspace(a: &Dmat, tol: &Tolerance) -> Result<SubspaceBasis> {
    let n = a.ncols();
    if a.nrows() == 0 || n == 0 {
        return Ok(SubspaceBasis::full(n));
    }
    if !a.iter().all(|x| x.is_finite()) {
        return Err(Error::contract("nullspace input has non-finite entries"));
    }
    // Pad with zero rows so the thin SVD carries a full set of right
    // singular vectors.
    let work = if a.nrows() < n {
        let mut padded = Dmat::zeros(n, n);
        padded.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
        padded
    } else {
        a.clone()
    };
    let svd = work.svd(false, true);
    let v_t = svd.v_t.expect("svd requested v_t");
    let order = sort_order(svd.singular_values.as_slice());
    let mut sigma: Vec<f64> = svd.singular_values.iter().copied().collect();
    sigma.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let rank = decide_rank(&sigma, tol)?;
    let kernel = (rank..order.len())
        .map(|r| Dvec::from(v_t.row(order[r]).transpose().into_owned()))
        .collect();
    SubspaceBasis::new(n, kernel, tol)
}

/// Eigen-decomposition of a symmetric matrix, eigenvalues ascending.
///
/// Returns `(eigenvalues, q)` with the columns of `q` the matching
/// orthonormal eigenvectors.
pub fn sym_eigen(s: &Dmat, tol: &Tolerance) -> Result<(Dvec, Dmat)> {
    if s.nrows() != s.ncols() {
        return Err(Error::DimensionMismatch {
            context: "sym_eigen input",
            expected: s.nrows(),
            found: s.ncols(),
        });
    }
    let defect = (s - s.transpose()).norm();
    if defect > tol.abs {
        return Err(Error::contract(format!(
            "sym_eigen input not symmetric: defect {defect:.3e}"
        )));
    }
    let sym = (s + s.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym.clone());
    let order = {
        let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        idx.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
        idx
    };
    let n = s.nrows();
    let mut values = Dvec::zeros(n);
    let mut q = Dmat::zeros(n, n);
    for (pos, &src) in order.iter().enumerate() {
        values[pos] = eig.eigenvalues[src];
        q.set_column(pos, &eig.eigenvectors.column(src));
    }
    let reconstruction = &q * Dmat::from_diagonal(&values) * q.transpose();
    let residual = (&sym - reconstruction).norm();
    let allowed = tol.abs * (1.0 + sym.norm());
    if residual > allowed {
        return Err(Error::inconsistency("sym_eigen reconstruction", residual, allowed));
    }
    Ok((values, q))
}

/// Exponential of a skew-symmetric matrix by scaling-and-squaring with a
/// fixed-order Taylor series; the result is orthogonal with determinant one.
pub fn expm_skew(b: &Dmat) -> Result<Dmat> {
    let tol = Tolerance::default();
    if b.nrows() != b.ncols() {
        return Err(Error::DimensionMismatch {
            context: "expm_skew input",
            expected: b.nrows(),
            found: b.ncols(),
        });
    }
    let skew_defect = (b + b.transpose()).norm();
    if skew_defect > tol.abs {
        return Err(Error::contract(format!(
            "expm_skew input not skew-symmetric: defect {skew_defect:.3e}"
        )));
    }
    let n = b.nrows();
    let norm = b.norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = b / 2f64.powi(squarings as i32);

    // 16 terms at |B| <= 1/2 put the truncation error far below f64 noise.
    let mut result = Dmat::identity(n, n);
    let mut term = Dmat::identity(n, n);
    for k in 1..=16 {
        term = &term * &scaled / k as f64;
        result += &term;
    }
    for _ in 0..squarings {
        result = &result * &result;
    }

    let ortho_defect = (result.transpose() * &result - Dmat::identity(n, n)).norm();
    if ortho_defect > tol.abs {
        return Err(Error::inconsistency("expm_skew orthogonality", ortho_defect, tol.abs));
    }
    let det_defect = (result.determinant() - 1.0).abs();
    if det_defect > tol.abs {
        return Err(Error::inconsistency("expm_skew determinant", det_defect, tol.abs));
    }
    Ok(result)
}

/// Deterministic stream of generic unit vectors.
///
/// Components are drawn uniformly and the vector normalized; any absolutely
/// continuous distribution works for genericity arguments, only the seed
/// matters for reproducibility.
pub fn sample_unit_vectors(dim: usize, count: usize, seed: u64) -> Vec<Dvec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v = Dvec::from_fn(dim, |_, _| rng.random_range(-1.0..1.0));
        let norm = v.norm();
        if norm > 1e-3 {
            out.push(v / norm);
        }
    }
    out
}

/// Flatten a matrix into a coordinate vector (row-major).
pub(crate) fn vec_of_mat(m: &Dmat) -> Dvec {
    let (r, c) = m.shape();
    Dvec::from_fn(r * c, |k, _| m[(k / c, k % c)])
}

/// Inverse of [`vec_of_mat`] for square matrices.
pub(crate) fn mat_of_vec(n: usize, v: &Dvec) -> Dmat {
    Dmat::from_fn(n, n, |i, j| v[i * n + j])
}
