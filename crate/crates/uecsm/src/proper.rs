//! Putting an overlap matrix into *proper* form.
//!
//! A pair of eigenbases is proper when the overlap matrix has a real positive
//! corner entry and no numerically vanishing entry in its first row or first
//! column. The reality test is only meaningful on a proper overlap matrix, so
//! this module finds row/column permutations (and the one phase that makes
//! the corner real) achieving that, when they exist.

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::Real;
use crate::tol::{is_borderline, Tolerances};
use num_complex::Complex;

/// Row/column relabeling plus unimodular rescalings taking an overlap matrix
/// to proper form. Entry `i` of `row_perm` names the source row that lands in
/// position `i` (likewise for columns); `row_phases[i]` multiplies the basis
/// vector behind new row `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProperPair<F> {
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub row_phases: Vec<Complex<F>>,
    pub col_phases: Vec<Complex<F>>,
}

impl<F: Real> ProperPair<F> {
    /// Apply the relabeling to the overlap matrix:
    /// `M'[i][j] = ω_i · conj(ζ_j) · M[row_perm[i]][col_perm[j]]`.
    pub fn apply(&self, m: &CMatrix<F>) -> CMatrix<F> {
        CMatrix::from_fn(m.dim(), |i, j| {
            m[(self.row_perm[i], self.col_perm[j])] * self.row_phases[i] * self.col_phases[j].conj()
        })
    }
}

/// Absolute threshold below which entry `(i, j)` counts as zero: relative to
/// the norms of its row and column, which for an overlap of orthonormal bases
/// are the (unit) norms of the underlying eigenvectors.
pub(crate) fn zero_threshold<F: Real>(m: &CMatrix<F>, i: usize, j: usize, tol: &Tolerances<F>) -> F {
    let n = m.dim();
    let mut row = F::zero();
    let mut col = F::zero();
    for k in 0..n {
        row += m[(i, k)].norm_sqr();
        col += m[(k, j)].norm_sqr();
    }
    tol.zero * row.sqrt() * col.sqrt()
}

/// Classify every entry of `m` against the zero threshold. Returns the list
/// of vanishing positions and whether any entry sat within the borderline
/// band around the threshold.
pub(crate) fn classify_zeros<F: Real>(
    m: &CMatrix<F>,
    tol: &Tolerances<F>,
) -> (Vec<(usize, usize)>, bool) {
    let n = m.dim();
    let mut zeros = Vec::new();
    let mut borderline = false;
    for i in 0..n {
        for j in 0..n {
            let thr = zero_threshold(m, i, j, tol);
            let md = m[(i, j)].norm();
            if md <= thr {
                zeros.push((i, j));
            }
            if is_borderline(md, thr) {
                borderline = true;
            }
        }
    }
    (zeros, borderline)
}

/// Find permutations and phases taking `m` to proper form.
///
/// The pivot is the lexicographically first `(i, j)` whose full row `i` and
/// column `j` are free of vanishing entries; that row and column are swapped
/// to the front and the new corner entry is rotated to be real positive.
/// With at most one vanishing entry (always the case for 3×3 overlaps of
/// eigenbases with simple spectra) a pivot always exists; otherwise the
/// search can fail with [`Error::CannotMakeProper`].
pub fn make_proper<F: Real>(m: &CMatrix<F>, tol: &Tolerances<F>) -> Result<ProperPair<F>> {
    let n = m.dim();
    let (zeros, _) = classify_zeros(m, tol);
    let row_has_zero = |i: usize| zeros.iter().any(|&(zi, _)| zi == i);
    let col_has_zero = |j: usize| zeros.iter().any(|&(_, zj)| zj == j);

    let mut pivot = None;
    'search: for i in 0..n {
        if row_has_zero(i) {
            continue;
        }
        for j in 0..n {
            if !col_has_zero(j) {
                pivot = Some((i, j));
                break 'search;
            }
        }
    }
    let (pi, pj) = pivot.ok_or(Error::CannotMakeProper)?;

    let swap_front = |k: usize| -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(0, k);
        p
    };
    let row_perm = swap_front(pi);
    let col_perm = swap_front(pj);

    let corner = m[(pi, pj)];
    let unit = Complex::new(F::one(), F::zero());
    let mut row_phases = vec![unit; n];
    let col_phases = vec![unit; n];
    // ω₁ = |m₁₁|/m₁₁ makes the corner real positive; the pivot row is
    // zero-free so the modulus is safely away from zero.
    row_phases[0] = corner.conj() / corner.norm();

    Ok(ProperPair {
        row_perm,
        col_perm,
        row_phases,
        col_phases,
    })
}
