//! The Cartesian (Toeplitz) decomposition `T = A + iB`.

use crate::matrix::CMatrix;
use crate::scalar::Real;
use num_complex::Complex;

/// Which Hermitian part of `T = A + iB` a construction refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CartesianSide {
    A,
    B,
}

/// The Hermitian pair `(A, B)` with `A = (T + T*)/2` and `B = (T − T*)/(2i)`.
///
/// Both parts are Hermitian *exactly*: entries are symmetrized on
/// construction, so `A = A*` and `B = B*` hold bit-for-bit.
#[derive(Debug, Clone, PartialEq)]
pub struct CartesianPair<F> {
    pub a: CMatrix<F>,
    pub b: CMatrix<F>,
}

impl<F: Real> CartesianPair<F> {
    /// `A + iB`, which reproduces `T` up to a few ulps.
    pub fn reconstruct(&self) -> CMatrix<F> {
        let i = Complex::new(F::zero(), F::one());
        &self.a + &self.b.scaled(i)
    }
}

/// Split `T` into its Hermitian and skew-Hermitian parts.
pub fn cartesian_decompose<F: Real>(t: &CMatrix<F>) -> CartesianPair<F> {
    let n = t.dim();
    let half = F::lit(0.5);
    // A[i][j] = (T[i][j] + conj(T[j][i]))/2 — fill the upper triangle and
    // mirror it so Hermitian symmetry is exact rather than approximate.
    let mut a = CMatrix::zeros(n);
    let mut b = CMatrix::zeros(n);
    for i in 0..n {
        a[(i, i)] = Complex::new(t[(i, i)].re, F::zero());
        b[(i, i)] = Complex::new(t[(i, i)].im, F::zero());
        for j in (i + 1)..n {
            let upper = t[(i, j)];
            let lower = t[(j, i)];
            let aij = (upper + lower.conj()) * half;
            // (T − T*)/(2i) entrywise: (upper − conj(lower)) / (2i) = −i/2 · (upper − conj(lower)).
            let diff = (upper - lower.conj()) * half;
            let bij = Complex::new(diff.im, -diff.re);
            a[(i, j)] = aij;
            a[(j, i)] = aij.conj();
            b[(i, j)] = bij;
            b[(j, i)] = bij.conj();
        }
    }
    CartesianPair { a, b }
}
