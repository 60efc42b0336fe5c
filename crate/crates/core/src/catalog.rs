//! Builders for the concrete representations shipped with the toolkit, and
//! the solver for the space of totally skew forms with values in a given
//! algebra.
//!
//! Conventions: compact matrix algebras carry the trace inner product
//! `<A, B> = tr(A^T B)` (equal to `-tr(AB)` on skew matrices and
//! proportional to the Killing form on the simple ones). Complex and
//! quaternionic structures are realified once and for all; the core never
//! touches complex arithmetic.

use crate::error::{Error, Result};
use crate::exterior::{binom, cross_product_form, FourForm, ThreeForm};
use crate::holonomy::SkewTorsionSystem;
use crate::lie::{part_coords, MatrixPart, Subalgebra};
use crate::numerics::Tolerance;
use crate::Dmat;

/// Which compact family an adjoint system is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompactFamily {
    So,
    Su,
}

/// `so(n)` with the orthonormal basis `(E_ij - E_ji)/sqrt(2)`, `i < j`.
pub fn build_so(n: usize, tol: &Tolerance) -> Result<Subalgebra> {
    if n < 2 {
        return Err(Error::contract("so(n) needs n >= 2"));
    }
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut basis = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let mut m = Dmat::zeros(n, n);
            m[(i, j)] = inv_sqrt2;
            m[(j, i)] = -inv_sqrt2;
            basis.push(m);
        }
    }
    Subalgebra::new(n, basis, tol)
}

/// Realify the complex matrix `X + iY` acting on `C^k = R^2k` with the
/// coordinates split as (real block, imaginary block).
fn realify(x: &Dmat, y: &Dmat) -> Dmat {
    let k = x.nrows();
    let mut m = Dmat::zeros(2 * k, 2 * k);
    m.view_mut((0, 0), (k, k)).copy_from(x);
    m.view_mut((k, k), (k, k)).copy_from(x);
    m.view_mut((0, k), (k, k)).copy_from(&(-y));
    m.view_mut((k, 0), (k, k)).copy_from(y);
    m
}

fn elementary(k: usize, i: usize, j: usize) -> Dmat {
    let mut m = Dmat::zeros(k, k);
    m[(i, j)] = 1.0;
    m
}

/// Antihermitian traceless basis of `su(k)` (generalized Gell-Mann),
/// realified to skew matrices on `R^2k` and normalized; dimension `k^2 - 1`.
fn su_basis(k: usize) -> Vec<Dmat> {
    let mut raw = Vec::with_capacity(k * k - 1);
    for a in 0..k {
        for b in (a + 1)..k {
            let x = elementary(k, a, b) - elementary(k, b, a);
            raw.push(realify(&x, &Dmat::zeros(k, k)));
            let y = elementary(k, a, b) + elementary(k, b, a);
            raw.push(realify(&Dmat::zeros(k, k), &y));
        }
    }
    for m in 1..k {
        let mut d = Dmat::zeros(k, k);
        for i in 0..m {
            d[(i, i)] = 1.0;
        }
        d[(m, m)] = -(m as f64);
        raw.push(realify(&Dmat::zeros(k, k), &d));
    }
    raw.iter().map(|m| m / m.norm()).collect()
}

/// `su(k)` as a subalgebra of `so(2k)`.
pub fn build_su(k: usize, tol: &Tolerance) -> Result<Subalgebra> {
    if k < 2 {
        return Err(Error::contract("su(k) needs k >= 2"));
    }
    Subalgebra::new(2 * k, su_basis(k), tol)
}

/// `u(n)` as real `2n x 2n` matrices commuting with the standard complex
/// structure; dimension `n^2`.
pub fn build_unitary(n: usize, tol: &Tolerance) -> Result<Subalgebra> {
    if n < 2 {
        return Err(Error::contract("u(n) needs n >= 2"));
    }
    let mut basis = su_basis(n);
    let center = realify(&Dmat::zeros(n, n), &Dmat::identity(n, n));
    basis.push(&center / center.norm());
    Subalgebra::new(2 * n, basis, tol)
}

/// The standard complex structure `J` on `R^2n` in the block convention
/// used by [`build_su`] and [`build_unitary`].
pub fn complex_structure(n: usize) -> Dmat {
    realify(&Dmat::zeros(n, n), &Dmat::identity(n, n))
}

/// Adjoint system of a compact simple algebra: `V` is the algebra itself as
/// a Euclidean space, the torsion form is its bracket, and the acting
/// algebra is the span of the adjoint operators.
pub fn build_adjoint_system(
    family: CompactFamily,
    k: usize,
    tol: &Tolerance,
) -> Result<SkewTorsionSystem> {
    let h_basis: Vec<Dmat> = match family {
        CompactFamily::So => {
            if k < 3 {
                return Err(Error::contract("adjoint so(k) needs k >= 3"));
            }
            build_so(k, tol)?.basis().to_vec()
        }
        CompactFamily::Su => {
            if k < 2 {
                return Err(Error::contract("adjoint su(k) needs k >= 2"));
            }
            build_su(k, tol)?.basis().to_vec()
        }
    };
    let dim = h_basis.len();
    let mut entries = Vec::new();
    for a in 0..dim {
        for b in (a + 1)..dim {
            let bracket = &h_basis[a] * &h_basis[b] - &h_basis[b] * &h_basis[a];
            for (c, h_c) in h_basis.iter().enumerate().skip(b + 1) {
                let value = (bracket.transpose() * h_c).trace();
                if value != 0.0 {
                    entries.push((a, b, c, value));
                }
            }
        }
    }
    let torsion = ThreeForm::from_entries(dim, &entries)?;
    let ads: Vec<Dmat> = (0..dim).map(|a| torsion.basis_operator(a)).collect();
    let algebra = Subalgebra::from_span(dim, &ads, tol)?;
    SkewTorsionSystem::new(torsion, algebra, tol)
}

// Left and right quaternion multiplication on one (1, i, j, k) block.
fn quaternion_block(unit: usize, left: bool) -> Dmat {
    // Rows of the matrix taking x to q*x (left) or x*q (right).
    let entries: [[f64; 16]; 3] = match left {
        true => [
            // q = i
            [0., -1., 0., 0., 1., 0., 0., 0., 0., 0., 0., -1., 0., 0., 1., 0.],
            // q = j
            [0., 0., -1., 0., 0., 0., 0., 1., 1., 0., 0., 0., 0., -1., 0., 0.],
            // q = k
            [0., 0., 0., -1., 0., 0., -1., 0., 0., 1., 0., 0., 1., 0., 0., 0.],
        ],
        false => [
            // q = i
            [0., -1., 0., 0., 1., 0., 0., 0., 0., 0., 0., 1., 0., 0., -1., 0.],
            // q = j
            [0., 0., -1., 0., 0., 0., 0., -1., 1., 0., 0., 0., 0., 1., 0., 0.],
            // q = k
            [0., 0., 0., -1., 0., 0., 1., 0., 0., -1., 0., 0., 1., 0., 0., 0.],
        ],
    };
    Dmat::from_row_slice(4, 4, &entries[unit])
}

fn place_block(n4: usize, block_row: usize, block_col: usize, block: &Dmat) -> Dmat {
    let mut m = Dmat::zeros(n4, n4);
    m.view_mut((4 * block_row, 4 * block_col), (4, 4)).copy_from(block);
    m
}

/// The representation of `sp(1) + sp(n)` on `H^n = R^4n`: `sp(1)` acts by
/// right scalar multiplication, `sp(n)` by left multiplication with
/// quaternion-antihermitian matrices. Returns the algebra together with the
/// invariant 4-form `w_I ^ w_I + w_J ^ w_J + w_K ^ w_K`, scaled so each
/// per-block volume coefficient is one.
pub fn build_quaternionic(n: usize, tol: &Tolerance) -> Result<(Subalgebra, FourForm)> {
    if n < 2 {
        return Err(Error::contract(
            "the quaternionic representation needs n >= 2; n = 1 is not irreducible",
        ));
    }
    let dim = 4 * n;
    let mut raw = Vec::with_capacity(3 + n * (2 * n + 1));
    // sp(1): right multiplication, block-diagonal across all of H^n.
    for unit in 0..3 {
        let block = quaternion_block(unit, false);
        let mut m = Dmat::zeros(dim, dim);
        for p in 0..n {
            m.view_mut((4 * p, 4 * p), (4, 4)).copy_from(&block);
        }
        raw.push(m);
    }
    // sp(n) diagonal: imaginary units at each position.
    for p in 0..n {
        for unit in 0..3 {
            raw.push(place_block(dim, p, p, &quaternion_block(unit, true)));
        }
    }
    // sp(n) off-diagonal: w in {1, i, j, k} at (p, q), matching entry at
    // (q, p) so the realified matrix is skew.
    for p in 0..n {
        for q in (p + 1)..n {
            let eye = Dmat::identity(4, 4);
            let mut m = place_block(dim, p, q, &eye);
            m.view_mut((4 * q, 4 * p), (4, 4)).copy_from(&(-eye));
            raw.push(m);
            for unit in 0..3 {
                let block = quaternion_block(unit, true);
                let mut m = place_block(dim, p, q, &block);
                m.view_mut((4 * q, 4 * p), (4, 4)).copy_from(&block);
                raw.push(m);
            }
        }
    }
    let basis: Vec<Dmat> = raw.iter().map(|m| m / m.norm()).collect();
    let algebra = Subalgebra::new(dim, basis, tol)?;

    // Kaehler 2-forms of the right multiplications: w_q(x, y) = <x q, y>.
    let mut kaehler = Vec::with_capacity(3);
    for unit in 0..3 {
        let block = quaternion_block(unit, false);
        let mut w = Dmat::zeros(dim, dim);
        for p in 0..n {
            w.view_mut((4 * p, 4 * p), (4, 4)).copy_from(&block.transpose());
        }
        kaehler.push(w);
    }
    let mut four = FourForm::zero(dim);
    for a in 0..dim {
        for b in (a + 1)..dim {
            for c in (b + 1)..dim {
                for d in (c + 1)..dim {
                    let mut v = 0.0;
                    for w in &kaehler {
                        v += 2.0
                            * (w[(a, b)] * w[(c, d)] - w[(a, c)] * w[(b, d)]
                                + w[(a, d)] * w[(b, c)]);
                    }
                    if v != 0.0 {
                        four.set(a, b, c, d, -v / 6.0);
                    }
                }
            }
        }
    }
    Ok((algebra, four))
}

/// The model system on `R^3`: the cross-product form over the full `so(3)`.
pub fn cross_product_system(tol: &Tolerance) -> Result<SkewTorsionSystem> {
    SkewTorsionSystem::new(cross_product_form(), build_so(3, tol)?, tol)
}

/// Orthonormal basis of `F(g) = {T : T_x in g for every x}`, the space of
/// totally skew forms with values in the algebra, computed as the kernel of
/// the stacked off-algebra projections of the coordinate operators.
pub fn solve_form_space(algebra: &Subalgebra, tol: &Tolerance) -> Result<Vec<ThreeForm>> {
    let n = algebra.ambient_dim();
    let coeff_count = binom(n, 3);
    if coeff_count == 0 {
        return Ok(Vec::new());
    }
    let skew_dim = n * (n - 1) / 2;
    let mut constraints = Dmat::zeros(n * skew_dim, coeff_count);
    let mut col = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let basis_form = ThreeForm::from_entries(n, &[(i, j, k, 1.0)])?;
                for dir in 0..n {
                    let mut op = basis_form.basis_operator(dir);
                    for b in algebra.basis() {
                        op -= b * (b.transpose() * &op).trace();
                    }
                    let coords = part_coords(&op, MatrixPart::Skew);
                    constraints
                        .view_mut((dir * skew_dim, col), (skew_dim, 1))
                        .copy_from(&coords);
                }
                col += 1;
            }
        }
    }
    let kernel = crate::numerics::nullspace(&constraints, tol)?;
    let mut forms = Vec::with_capacity(kernel.dim());
    for coeffs in kernel.vectors() {
        let mut entries = Vec::new();
        let mut pos = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    entries.push((i, j, k, coeffs[pos]));
                    pos += 1;
                }
            }
        }
        let form = ThreeForm::from_entries(n, &entries)?;
        // Every member of the space must produce a valid system.
        SkewTorsionSystem::new(form.clone(), algebra.clone(), tol)?;
        forms.push(form);
    }
    Ok(forms)
}

/// How a catalog entry is constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryKind {
    So,
    Su,
    AdjointSo,
    AdjointSu,
    Quaternionic,
    Unitary,
}

/// A named family of representations the config format can refer to.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: EntryKind,
    pub min_param: usize,
    pub param_range: &'static str,
    pub ambient_formula: &'static str,
    pub algebra_formula: &'static str,
}

/// Everything a catalog entry can produce.
pub struct BuiltEntry {
    pub algebra: Subalgebra,
    /// Canonical torsion form, present for the adjoint entries.
    pub canonical_torsion: Option<ThreeForm>,
    /// Invariant 4-form, present for the quaternionic entry.
    pub invariant_four_form: Option<FourForm>,
}

impl CatalogEntry {
    pub fn ambient_dim(&self, p: usize) -> usize {
        match self.kind {
            EntryKind::So => p,
            EntryKind::Su => 2 * p,
            EntryKind::AdjointSo => p * (p - 1) / 2,
            EntryKind::AdjointSu => p * p - 1,
            EntryKind::Quaternionic => 4 * p,
            EntryKind::Unitary => 2 * p,
        }
    }

    pub fn algebra_dim(&self, p: usize) -> usize {
        match self.kind {
            EntryKind::So => p * (p - 1) / 2,
            EntryKind::Su => p * p - 1,
            EntryKind::AdjointSo => p * (p - 1) / 2,
            EntryKind::AdjointSu => p * p - 1,
            EntryKind::Quaternionic => 3 + p * (2 * p + 1),
            EntryKind::Unitary => p * p,
        }
    }

    pub fn build(&self, param: usize, tol: &Tolerance) -> Result<BuiltEntry> {
        if param < self.min_param {
            return Err(Error::contract(format!(
                "catalog entry '{}' needs parameter >= {}, got {param}",
                self.name, self.min_param
            )));
        }
        let built = match self.kind {
            EntryKind::So => BuiltEntry {
                algebra: build_so(param, tol)?,
                canonical_torsion: None,
                invariant_four_form: None,
            },
            EntryKind::Su => BuiltEntry {
                algebra: build_su(param, tol)?,
                canonical_torsion: None,
                invariant_four_form: None,
            },
            EntryKind::AdjointSo | EntryKind::AdjointSu => {
                let family = if self.kind == EntryKind::AdjointSo {
                    CompactFamily::So
                } else {
                    CompactFamily::Su
                };
                let sys = build_adjoint_system(family, param, tol)?;
                BuiltEntry {
                    algebra: sys.algebra().clone(),
                    canonical_torsion: Some(sys.torsion().clone()),
                    invariant_four_form: None,
                }
            }
            EntryKind::Quaternionic => {
                let (algebra, four) = build_quaternionic(param, tol)?;
                BuiltEntry {
                    algebra,
                    canonical_torsion: None,
                    invariant_four_form: Some(four),
                }
            }
            EntryKind::Unitary => BuiltEntry {
                algebra: build_unitary(param, tol)?,
                canonical_torsion: None,
                invariant_four_form: None,
            },
        };
        debug_assert_eq!(built.algebra.ambient_dim(), self.ambient_dim(param));
        Ok(built)
    }
}

/// The immutable process-wide catalog.
pub const CATALOG: [CatalogEntry; 6] = [
    CatalogEntry {
        name: "so",
        kind: EntryKind::So,
        min_param: 2,
        param_range: "n>=2",
        ambient_formula: "n",
        algebra_formula: "n(n-1)/2",
    },
    CatalogEntry {
        name: "su",
        kind: EntryKind::Su,
        min_param: 2,
        param_range: "n>=2",
        ambient_formula: "2n",
        algebra_formula: "n^2-1",
    },
    CatalogEntry {
        name: "adjoint-so",
        kind: EntryKind::AdjointSo,
        min_param: 3,
        param_range: "n>=3",
        ambient_formula: "n(n-1)/2",
        algebra_formula: "n(n-1)/2",
    },
    CatalogEntry {
        name: "adjoint-su",
        kind: EntryKind::AdjointSu,
        min_param: 2,
        param_range: "n>=2",
        ambient_formula: "n^2-1",
        algebra_formula: "n^2-1",
    },
    CatalogEntry {
        name: "quaternionic",
        kind: EntryKind::Quaternionic,
        min_param: 2,
        param_range: "n>=2",
        ambient_formula: "4n",
        algebra_formula: "3+n(2n+1)",
    },
    CatalogEntry {
        name: "unitary",
        kind: EntryKind::Unitary,
        min_param: 2,
        param_range: "n>=2",
        ambient_formula: "2n",
        algebra_formula: "n^2",
    },
];

/// Look up a catalog entry by its config-file name.
pub fn find(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}
