//! The reality test on ratios of overlap entries.
//!
//! For a properized overlap matrix `M` the quantities
//! `q_ij = m_ij / (m_i1 · m_1j)` for `i, j ≥ 2` are invariant under the
//! remaining freedom in the eigenbases (unimodular rescaling of every vector
//! except the two pinned by properization). The input is unitarily equivalent
//! to a complex symmetric matrix exactly when every `q_ij` is real — and when
//! both spectra are simple, *only* then.

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::proper::zero_threshold;
use crate::scalar::Real;
use crate::tol::{is_borderline, Tolerances};
use num_complex::Complex;

/// Result of the reality test over a properized overlap matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RealityOutcome<F> {
    /// All ratios real within tolerance?
    pub pass: bool,
    /// `max_rel_im − tol.real`: negative on pass, positive on failure.
    pub margin: F,
    /// The deviation actually measured: `max |Im q_ij| / (1 + |q_ij|)`.
    pub max_rel_im: F,
    /// 0-based `(i, j)` of the worst ratio (present when n ≥ 2 ratios exist).
    pub witness: Option<(usize, usize)>,
    /// The worst ratio itself.
    pub witness_value: Option<Complex<F>>,
    /// True when the measurement landed within a decade of the threshold.
    pub borderline: bool,
}

/// Run the reality test on a properized overlap matrix.
///
/// Fails with [`Error::ZeroDenominator`] if an entry of the first row or
/// column is numerically zero — that means the matrix was not in proper form
/// and the ratios would be meaningless.
pub fn reality_test<F: Real>(mp: &CMatrix<F>, tol: &Tolerances<F>) -> Result<RealityOutcome<F>> {
    let n = mp.dim();
    for k in 0..n {
        if mp[(0, k)].norm() <= zero_threshold(mp, 0, k, tol) {
            return Err(Error::ZeroDenominator { row: 0, col: k });
        }
        if mp[(k, 0)].norm() <= zero_threshold(mp, k, 0, tol) {
            return Err(Error::ZeroDenominator { row: k, col: 0 });
        }
    }

    let mut max_rel_im = F::zero();
    let mut witness = None;
    let mut witness_value = None;
    for i in 1..n {
        for j in 1..n {
            let q = mp[(i, j)] / (mp[(i, 0)] * mp[(0, j)]);
            let rel = q.im.abs() / (F::one() + q.norm());
            if rel > max_rel_im || witness.is_none() {
                max_rel_im = rel;
                witness = Some((i, j));
                witness_value = Some(q);
            }
        }
    }

    let pass = max_rel_im <= tol.real;
    Ok(RealityOutcome {
        pass,
        margin: max_rel_im - tol.real,
        max_rel_im,
        witness,
        witness_value,
        borderline: is_borderline(max_rel_im, tol.real),
    })
}
