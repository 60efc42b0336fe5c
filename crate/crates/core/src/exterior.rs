//! Exterior 3-form and 4-form algebra.
//!
//! A torsion form is stored through its coefficients `T(e_i, e_j, e_k)` on
//! strictly increasing triples; evaluation at arbitrary index order applies
//! the permutation sign, repeated indices give zero. The operator view turns
//! a 3-form into the family of skew maps `T_x: y -> T_x y` with
//! `<T_x y, z> = T(x, y, z)`, matrix entry `(k, j)` of `T_x` being
//! `T(x, e_j, e_k)`.
//!
//! Sign convention for the two actions: for an orthogonal `g`,
//! `pullback(g, T)(x, y, z) = T(gx, gy, gz)`, and for skew `B`,
//! `so_action(B, T)(x, y, z) = -T(Bx, y, z) - T(x, By, z) - T(x, y, Bz)`,
//! so that `d/dt pullback(exp(tB), T) = -so_action(B, T)` at `t = 0`.
//! Invariance (a zero derivative) does not depend on the sign.

use rand::Rng;

use crate::error::{Error, Result};
use crate::numerics::{SubspaceBasis, Tolerance};
use crate::{Dmat, Dvec};

pub(crate) fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut out = 1usize;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// Sort a small index tuple, returning the permutation sign, or `None` when
/// an index repeats.
fn sort_signed(indices: &mut [usize]) -> Option<f64> {
    let mut sign = 1.0;
    let len = indices.len();
    for pass in 0..len {
        for pos in 0..len - 1 - pass {
            if indices[pos] == indices[pos + 1] {
                return None;
            }
            if indices[pos] > indices[pos + 1] {
                indices.swap(pos, pos + 1);
                sign = -sign;
            }
        }
    }
    Some(sign)
}

/// Lexicographic rank of a strictly increasing triple among all triples.
fn triple_rank(n: usize, i: usize, j: usize, k: usize) -> usize {
    let mut rank = 0;
    for f in 0..i {
        rank += binom(n - 1 - f, 2);
    }
    for s in (i + 1)..j {
        rank += n - 1 - s;
    }
    rank + (k - j - 1)
}

fn quad_rank(n: usize, i: usize, j: usize, k: usize, l: usize) -> usize {
    let mut rank = 0;
    for f in 0..i {
        rank += binom(n - 1 - f, 3);
    }
    rank + triple_rank(n - 1 - i, j - i - 1, k - i - 1, l - i - 1)
}

/// Totally antisymmetric trilinear form on `R^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeForm {
    dim: usize,
    coeffs: Vec<f64>,
}

impl ThreeForm {
    pub fn zero(dim: usize) -> Self {
        ThreeForm {
            dim,
            coeffs: vec![0.0; binom(dim, 3)],
        }
    }

    /// Build from `(i, j, k, value)` entries with 0-based strictly
    /// increasing indices; this is the config-file representation.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, f64)]) -> Result<Self> {
        let mut form = ThreeForm::zero(dim);
        for &(i, j, k, value) in entries {
            if !(i < j && j < k && k < dim) {
                return Err(Error::contract(format!(
                    "three-form entry [{i}, {j}, {k}] must be strictly increasing and below {dim}"
                )));
            }
            if !value.is_finite() {
                return Err(Error::contract(format!(
                    "three-form entry [{i}, {j}, {k}] has non-finite value"
                )));
            }
            form.coeffs[triple_rank(dim, i, j, k)] = value;
        }
        Ok(form)
    }

    /// Nonzero coefficients as `(i, j, k, value)` entries.
    pub fn entries(&self) -> Vec<(usize, usize, usize, f64)> {
        let mut out = Vec::new();
        let n = self.dim;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let v = self.coeffs[triple_rank(n, i, j, k)];
                    if v != 0.0 {
                        out.push((i, j, k, v));
                    }
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Value at arbitrary indices: permutation sign applied, zero on repeats.
    pub fn eval(&self, i: usize, j: usize, k: usize) -> f64 {
        let mut idx = [i, j, k];
        match sort_signed(&mut idx) {
            None => 0.0,
            Some(sign) => sign * self.coeffs[triple_rank(self.dim, idx[0], idx[1], idx[2])],
        }
    }

    /// Trilinear evaluation at arbitrary vectors.
    pub fn eval_vec(&self, x: &Dvec, y: &Dvec, z: &Dvec) -> f64 {
        let n = self.dim;
        let mut total = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let t = self.coeffs[triple_rank(n, i, j, k)];
                    if t == 0.0 {
                        continue;
                    }
                    let det = x[i] * (y[j] * z[k] - y[k] * z[j])
                        - y[i] * (x[j] * z[k] - x[k] * z[j])
                        + z[i] * (x[j] * y[k] - x[k] * y[j]);
                    total += t * det;
                }
            }
        }
        total
    }

    /// Euclidean norm over the increasing-index coefficients.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        ThreeForm {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Unit-coefficient-norm copy; `None` when the form is zero.
    pub fn normalized(&self) -> Option<Self> {
        let norm = self.norm();
        if norm == 0.0 {
            None
        } else {
            Some(self.scaled(1.0 / norm))
        }
    }

    pub fn add(&self, other: &ThreeForm) -> Result<ThreeForm> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                context: "three-form addition",
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(ThreeForm {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Coefficient inner product over increasing triples.
    pub fn dot(&self, other: &ThreeForm) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// The skew operator `T_x` with entry `(k, j) = T(x, e_j, e_k)`; it
    /// satisfies `T_x x = 0`.
    pub fn operator(&self, x: &Dvec) -> Result<Dmat> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "three-form operator argument",
                expected: self.dim,
                found: x.len(),
            });
        }
        let n = self.dim;
        let mut m = Dmat::zeros(n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let t = self.coeffs[triple_rank(n, i, j, k)];
                    if t == 0.0 {
                        continue;
                    }
                    // <T_a b, c> = t for each even permutation (a, b, c).
                    m[(k, j)] += x[i] * t;
                    m[(j, k)] -= x[i] * t;
                    m[(i, k)] += x[j] * t;
                    m[(k, i)] -= x[j] * t;
                    m[(j, i)] += x[k] * t;
                    m[(i, j)] -= x[k] * t;
                }
            }
        }
        Ok(m)
    }

    /// Operator of the `i`-th coordinate vector.
    pub fn basis_operator(&self, i: usize) -> Dmat {
        let mut x = Dvec::zeros(self.dim);
        x[i] = 1.0;
        self.operator(&x).expect("basis vector has the right length")
    }

    /// Infinitesimal action of a skew matrix:
    /// `(B . T)(x, y, z) = -T(Bx, y, z) - T(x, By, z) - T(x, y, Bz)`,
    /// the derivative of `-pullback(exp(tB), T)` at `t = 0`. In operator
    /// form this is `(B . T)_x y = B T_x y - T_x By - T_{Bx} y`.
    pub fn so_action(&self, b: &Dmat) -> Result<ThreeForm> {
        check_skew(b, self.dim, "so_action on a three-form")?;
        let n = self.dim;
        let mut out = ThreeForm::zero(n);
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let mut v = 0.0;
                    for m in 0..n {
                        v -= b[(m, i)] * self.eval(m, j, k)
                            + b[(m, j)] * self.eval(i, m, k)
                            + b[(m, k)] * self.eval(i, j, m);
                    }
                    out.coeffs[triple_rank(n, i, j, k)] = v;
                }
            }
        }
        Ok(out)
    }

    /// Pullback along an orthogonal matrix:
    /// `pullback(g, T)(x, y, z) = T(gx, gy, gz)`, i.e. the form of the
    /// conjugated operator family `v -> g^{-1} T_{gv} g`.
    pub fn pullback(&self, g: &Dmat) -> Result<ThreeForm> {
        check_orthogonal(g, self.dim)?;
        let n = self.dim;
        let mut out = ThreeForm::zero(n);
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let mut v = 0.0;
                    for a in 0..n {
                        for b in (a + 1)..n {
                            for c in (b + 1)..n {
                                let t = self.coeffs[triple_rank(n, a, b, c)];
                                if t == 0.0 {
                                    continue;
                                }
                                let det = g[(a, i)] * (g[(b, j)] * g[(c, k)] - g[(b, k)] * g[(c, j)])
                                    - g[(b, i)] * (g[(a, j)] * g[(c, k)] - g[(a, k)] * g[(c, j)])
                                    + g[(c, i)] * (g[(a, j)] * g[(b, k)] - g[(a, k)] * g[(b, j)]);
                                v += t * det;
                            }
                        }
                    }
                    out.coeffs[triple_rank(n, i, j, k)] = v;
                }
            }
        }
        Ok(out)
    }

    /// Restriction to a subspace, expressed in the coordinates of `basis`.
    pub fn restrict(&self, basis: &SubspaceBasis) -> Result<ThreeForm> {
        if basis.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "three-form restriction",
                expected: self.dim,
                found: basis.ambient_dim(),
            });
        }
        let d = basis.dim();
        let mut out = ThreeForm::zero(d);
        let vs = basis.vectors();
        for p in 0..d {
            for q in (p + 1)..d {
                for r in (q + 1)..d {
                    out.coeffs[triple_rank(d, p, q, r)] = self.eval_vec(&vs[p], &vs[q], &vs[r]);
                }
            }
        }
        Ok(out)
    }

    /// Generic unit-coefficient-norm form, deterministic for a given rng.
    pub fn sample_unit(dim: usize, rng: &mut impl Rng) -> ThreeForm {
        loop {
            let mut form = ThreeForm::zero(dim);
            for c in form.coeffs.iter_mut() {
                *c = rng.random_range(-1.0..1.0);
            }
            if let Some(unit) = form.normalized() {
                return unit;
            }
        }
    }
}

/// Totally antisymmetric quadrilinear form on `R^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourForm {
    dim: usize,
    coeffs: Vec<f64>,
}

impl FourForm {
    pub fn zero(dim: usize) -> Self {
        FourForm {
            dim,
            coeffs: vec![0.0; binom(dim, 4)],
        }
    }

    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, usize, f64)]) -> Result<Self> {
        let mut form = FourForm::zero(dim);
        for &(i, j, k, l, value) in entries {
            if !(i < j && j < k && k < l && l < dim) {
                return Err(Error::contract(format!(
                    "four-form entry [{i}, {j}, {k}, {l}] must be strictly increasing and below {dim}"
                )));
            }
            if !value.is_finite() {
                return Err(Error::contract(format!(
                    "four-form entry [{i}, {j}, {k}, {l}] has non-finite value"
                )));
            }
            form.coeffs[quad_rank(dim, i, j, k, l)] = value;
        }
        Ok(form)
    }

    pub fn entries(&self) -> Vec<(usize, usize, usize, usize, f64)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    for l in (k + 1)..n {
                        let v = self.coeffs[quad_rank(n, i, j, k, l)];
                        if v != 0.0 {
                            out.push((i, j, k, l, v));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let mut idx = [i, j, k, l];
        match sort_signed(&mut idx) {
            None => 0.0,
            Some(sign) => {
                sign * self.coeffs[quad_rank(self.dim, idx[0], idx[1], idx[2], idx[3])]
            }
        }
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, k: usize, l: usize, value: f64) {
        self.coeffs[quad_rank(self.dim, i, j, k, l)] = value;
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, c| acc.max(c.abs()))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        FourForm {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Same infinitesimal action as on 3-forms, with four slot terms.
    pub fn so_action(&self, b: &Dmat) -> Result<FourForm> {
        check_skew(b, self.dim, "so_action on a four-form")?;
        let n = self.dim;
        let mut out = FourForm::zero(n);
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    for l in (k + 1)..n {
                        let mut v = 0.0;
                        for m in 0..n {
                            v -= b[(m, i)] * self.eval(m, j, k, l)
                                + b[(m, j)] * self.eval(i, m, k, l)
                                + b[(m, k)] * self.eval(i, j, m, l)
                                + b[(m, l)] * self.eval(i, j, k, m);
                        }
                        out.coeffs[quad_rank(n, i, j, k, l)] = v;
                    }
                }
            }
        }
        Ok(out)
    }
}

pub(crate) fn check_skew(b: &Dmat, dim: usize, context: &str) -> Result<()> {
    if b.nrows() != dim || b.ncols() != dim {
        return Err(Error::DimensionMismatch {
            context: "skew matrix",
            expected: dim,
            found: b.nrows(),
        });
    }
    let tol = Tolerance::default();
    let defect = (b + b.transpose()).norm();
    // Scale-aware: callers feed matrices of arbitrary magnitude.
    if defect > tol.abs * (1.0 + b.norm()) {
        return Err(Error::contract(format!(
            "{context}: matrix not skew-symmetric, defect {defect:.3e}"
        )));
    }
    Ok(())
}

pub(crate) fn check_orthogonal(g: &Dmat, dim: usize) -> Result<()> {
    if g.nrows() != dim || g.ncols() != dim {
        return Err(Error::DimensionMismatch {
            context: "orthogonal matrix",
            expected: dim,
            found: g.nrows(),
        });
    }
    let tol = Tolerance::default();
    let defect = (g.transpose() * g - Dmat::identity(dim, dim)).norm();
    if defect > tol.abs {
        return Err(Error::contract(format!(
            "matrix not orthogonal: defect {defect:.3e}"
        )));
    }
    Ok(())
}

/// The cross-product form `e1 ^ e2 ^ e3` on `R^3`: `T_x y = x × y`.
pub fn cross_product_form() -> ThreeForm {
    ThreeForm::from_entries(3, &[(0, 1, 2, 1.0)]).expect("static entries are valid")
}
