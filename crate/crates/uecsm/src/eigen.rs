//! Hermitian eigendecomposition via cyclic Jacobi rotations, eigenbasis
//! overlaps, and the exponential of a skew-Hermitian matrix.
//!
//! The solver is deliberately self-contained: for the small dense matrices
//! this crate works with (n ≲ 10) a cyclic Jacobi sweep is simple, accurate to
//! a few ulps, and — together with the deterministic ordering and phase
//! convention below — gives bit-reproducible eigensystems, which the decision
//! pipeline and the Monte Carlo lab both rely on.

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::Real;
use crate::vector::CVector;
use num_complex::Complex;

/// Sweep cap for the cyclic Jacobi iteration. In practice 5–10 sweeps suffice
/// for n ≤ 10; hitting the cap with significant off-diagonal mass left is an
/// error.
const MAX_SWEEPS: usize = 30;

/// Eigenvalues (ascending) and a matching orthonormal eigenvector basis.
///
/// Column `i` of `vectors` belongs to `values[i]`. Each column is normalized
/// so its largest-modulus entry is real and positive, which pins the
/// otherwise arbitrary phase and makes results reproducible across runs.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem<F> {
    pub values: Vec<F>,
    pub vectors: CMatrix<F>,
}

impl<F: Real> EigenSystem<F> {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Eigenvector for `values[i]`.
    pub fn vector(&self, i: usize) -> CVector<F> {
        self.vectors.col(i)
    }

    /// Smallest gap between adjacent (sorted) eigenvalues; infinity for n = 1.
    pub fn min_gap(&self) -> F {
        let mut gap = F::infinity();
        for w in self.values.windows(2) {
            gap = gap.min(w[1] - w[0]);
        }
        gap
    }

    /// `V · diag(λ) · V*` — reassemble the matrix this system represents.
    pub fn reconstruct(&self) -> CMatrix<F> {
        let lambda = CMatrix::from_diag(
            &self
                .values
                .iter()
                .map(|&l| Complex::new(l, F::zero()))
                .collect::<Vec<_>>(),
        );
        &(&self.vectors * &lambda) * &self.vectors.adjoint()
    }
}

/// Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations.
///
/// `tol` bounds the accepted Hermitian defect: the call fails with
/// [`Error::NotHermitian`] when `‖H − H*‖_F > tol · max(1, ‖H‖_F)`. The
/// iteration runs on the symmetrized matrix `(H + H*)/2` until the
/// off-diagonal Frobenius mass drops below `1e-14 · max(1, ‖H‖_F)` or
/// [`MAX_SWEEPS`] sweeps have run; the cap with off-diagonal mass above
/// `1e-8 · ‖H‖_F` still outstanding is reported as [`Error::NoConvergence`].
pub fn hermitian_eigen<F: Real>(h: &CMatrix<F>, tol: F) -> Result<EigenSystem<F>> {
    let n = h.dim();
    let scale = h.frobenius_norm();
    let defect = h.hermitian_defect();
    let limit = tol * F::one().max(scale);
    if defect > limit {
        return Err(Error::NotHermitian {
            defect: defect.as_f64(),
            limit: limit.as_f64(),
        });
    }

    // Work on the exactly symmetrized copy: real diagonal, a[j][i] = conj(a[i][j]).
    let mut a = CMatrix::from_fn(n, |i, j| {
        if i == j {
            Complex::new(h[(i, i)].re, F::zero())
        } else {
            (h[(i, j)] + h[(j, i)].conj()) * F::lit(0.5)
        }
    });
    let mut v = CMatrix::identity(n);

    let target = F::lit(1e-14) * F::one().max(scale);
    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let off = off_diagonal_norm(&a);
    if off > target && off > F::lit(1e-8) * scale {
        return Err(Error::NoConvergence {
            off: off.as_f64(),
            limit: (F::lit(1e-8) * scale).as_f64(),
        });
    }

    // Ascending eigenvalue order; stable sort keeps construction order on ties.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .re
            .partial_cmp(&a[(j, j)].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values: Vec<F> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = CMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    for j in 0..n {
        fix_column_phase(&mut vectors, j);
    }

    Ok(EigenSystem { values, vectors })
}

/// One complex Jacobi rotation zeroing `a[p][q]` (and `a[q][p]`), accumulated
/// into `v`. Uses the unitary
/// `G = [[c, σ], [−conj(σ), c]]` with `σ = s·e^{iφ}`, `e^{iφ} = a_pq/|a_pq|`,
/// and the classic stable choice of the smaller rotation angle.
fn jacobi_rotate<F: Real>(a: &mut CMatrix<F>, v: &mut CMatrix<F>, p: usize, q: usize) {
    let n = a.dim();
    let h = a[(p, q)];
    let habs = h.norm();
    if habs <= F::min_positive_value() {
        return;
    }
    let phase = h / habs;
    let alpha = a[(p, p)].re;
    let beta = a[(q, q)].re;
    let tau = (beta - alpha) / (habs + habs);
    let sign = if tau >= F::zero() { F::one() } else { -F::one() };
    let t = sign / (tau.abs() + (F::one() + tau * tau).sqrt());
    let c = F::one() / (F::one() + t * t).sqrt();
    let s = t * c;
    let sigma = phase * s;

    // A ← A·J, then A ← J*·A.
    for r in 0..n {
        let t1 = a[(r, p)];
        let t2 = a[(r, q)];
        a[(r, p)] = t1 * c - t2 * sigma.conj();
        a[(r, q)] = t1 * sigma + t2 * c;
    }
    for r in 0..n {
        let t1 = a[(p, r)];
        let t2 = a[(q, r)];
        a[(p, r)] = t1 * c - t2 * sigma;
        a[(q, r)] = t1 * sigma.conj() + t2 * c;
    }
    // The rotation annihilates these exactly; clear the roundoff dust.
    a[(p, q)] = Complex::new(F::zero(), F::zero());
    a[(q, p)] = Complex::new(F::zero(), F::zero());
    a[(p, p)] = Complex::new(a[(p, p)].re, F::zero());
    a[(q, q)] = Complex::new(a[(q, q)].re, F::zero());

    for r in 0..n {
        let t1 = v[(r, p)];
        let t2 = v[(r, q)];
        v[(r, p)] = t1 * c - t2 * sigma.conj();
        v[(r, q)] = t1 * sigma + t2 * c;
    }
}

fn off_diagonal_norm<F: Real>(a: &CMatrix<F>) -> F {
    let n = a.dim();
    let mut acc = F::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Rotate column `j` by a unimodular factor so that its largest-modulus entry
/// (first such entry on ties) becomes real and positive.
fn fix_column_phase<F: Real>(m: &mut CMatrix<F>, j: usize) {
    let n = m.dim();
    let mut best = 0;
    let mut best_mod = F::zero();
    for i in 0..n {
        let md = m[(i, j)].norm();
        if md > best_mod {
            best_mod = md;
            best = i;
        }
    }
    if best_mod <= F::min_positive_value() {
        return;
    }
    let phase = m[(best, j)].conj() / best_mod;
    for i in 0..n {
        let z = m[(i, j)] * phase;
        m[(i, j)] = z;
    }
    // The pivot entry is |z| up to roundoff; make it exactly real.
    m[(best, j)] = Complex::new(m[(best, j)].re, F::zero());
}

/// Overlap matrix `M[i][j] = ⟨g_i, h_j⟩` between the eigenvector columns of
/// two systems, with the inner product linear in the first argument.
pub fn overlap_matrix<F: Real>(g: &EigenSystem<F>, h: &EigenSystem<F>) -> Result<CMatrix<F>> {
    let n = g.dim();
    if h.dim() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: h.dim(),
        });
    }
    Ok(CMatrix::from_fn(n, |i, j| {
        let mut acc = Complex::new(F::zero(), F::zero());
        for k in 0..n {
            acc += g.vectors[(k, i)] * h.vectors[(k, j)].conj();
        }
        acc
    }))
}

/// Exponential of a skew-Hermitian matrix, always unitary.
///
/// Computed through the Hermitian eigendecomposition of `−iS`:
/// `exp(S) = V · diag(e^{iλ}) · V*`. Fails with [`Error::NotSkewHermitian`]
/// when `‖S + S*‖_F > 1e-10 · max(1, ‖S‖_F)`.
pub fn expm_skew_hermitian<F: Real>(s: &CMatrix<F>) -> Result<CMatrix<F>> {
    let scale = s.frobenius_norm();
    let defect = (s + &s.adjoint()).frobenius_norm();
    let limit = F::lit(1e-10) * F::one().max(scale);
    if defect > limit {
        return Err(Error::NotSkewHermitian {
            defect: defect.as_f64(),
            limit: limit.as_f64(),
        });
    }
    let minus_i = Complex::new(F::zero(), -F::one());
    let herm = s.scaled(minus_i);
    let eig = hermitian_eigen(&herm, F::lit(1e-10))?;
    let phases: Vec<Complex<F>> = eig
        .values
        .iter()
        .map(|&l| Complex::from_polar(F::one(), l))
        .collect();
    let d = CMatrix::from_diag(&phases);
    Ok(&(&eig.vectors * &d) * &eig.vectors.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    type C = Complex<f64>;
    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn identity_has_unit_spectrum_and_trivial_basis() {
        let eig = hermitian_eigen(&CMatrix::<f64>::identity(3), 1e-12).unwrap();
        assert_eq!(eig.values, vec![1.0, 1.0, 1.0]);
        assert_eq!(eig.vectors, CMatrix::identity(3));
    }

    #[test]
    fn pauli_x_eigensystem() {
        // [[0,1],[1,0]] has eigenvalues ∓1 with vectors (1,∓1)/√2.
        let h = CMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let eig = hermitian_eigen(&h, 1e-12).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 1.0).abs() < 1e-14);
        let r = 1.0 / 2.0_f64.sqrt();
        // Phase convention: largest-modulus entry real positive (ties → first entry).
        assert!((eig.vectors[(0, 0)] - c(r, 0.0)).norm() < 1e-14);
        assert!((eig.vectors[(1, 0)] - c(-r, 0.0)).norm() < 1e-14);
        assert!((eig.vectors[(0, 1)] - c(r, 0.0)).norm() < 1e-14);
        assert!((eig.vectors[(1, 1)] - c(r, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let m = CMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(
            hermitian_eigen(&m, 1e-12),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn overlap_of_a_system_with_itself_is_identity() {
        let h = CMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.5, 0.25)],
            vec![c(0.5, -0.25), c(-2.0, 0.0)],
        ])
        .unwrap();
        let eig = hermitian_eigen(&h, 1e-12).unwrap();
        let m = overlap_matrix(&eig, &eig).unwrap();
        assert!(m.distance(&CMatrix::identity(2)) < 1e-14);
    }

    #[test]
    fn expm_of_planar_rotation_generator() {
        let th = 0.7_f64;
        let s = CMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(th, 0.0)],
            vec![c(-th, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let u = expm_skew_hermitian(&s).unwrap();
        let expect = CMatrix::from_rows(vec![
            vec![c(th.cos(), 0.0), c(th.sin(), 0.0)],
            vec![c(-th.sin(), 0.0), c(th.cos(), 0.0)],
        ])
        .unwrap();
        assert!(u.distance(&expect) < 1e-14);
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let u = expm_skew_hermitian(&CMatrix::<f64>::zeros(3)).unwrap();
        assert!(u.distance(&CMatrix::identity(3)) < 1e-15);
    }

    #[test]
    fn expm_rejects_non_skew_input() {
        let m = CMatrix::<f64>::identity(2);
        assert!(matches!(
            expm_skew_hermitian(&m),
            Err(Error::NotSkewHermitian { .. })
        ));
    }
}
