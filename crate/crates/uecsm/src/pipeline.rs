//! Decision pipeline: shortcut constructions first, then the overlap-ratio
//! test on a properized overlap matrix.
//!
//! Every positive answer is backed by a certificate that is re-verified
//! before it is returned; a construction whose certificate fails its residual
//! checks is abandoned and the pipeline falls through to the next stage, so a
//! wrong detection near a threshold can cost accuracy but never soundness.

use crate::cartesian::{cartesian_decompose, CartesianPair, CartesianSide};
use crate::certificate::{
    build_certificate, certificate_from_unitary, certify_2x2, certify_repeated_eigenvalue,
    certify_shared_eigenvector, commuting_eigenbasis, VerificationReport,
};
use crate::eigen::{hermitian_eigen, overlap_matrix, EigenSystem};
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::proper::{classify_zeros, make_proper, zero_threshold};
use crate::reality::reality_test;
use crate::scalar::Real;
use crate::tol::{is_borderline, Tolerances};
use crate::verdict::{Branch, Status, Verdict};

/// Tolerance passed to [`hermitian_eigen`] for Cartesian parts, which are
/// Hermitian by construction up to rounding.
fn herm_tol<F: Real>() -> F {
    F::lit(1e-10)
}

fn verdict<F: Real>(status: Status, branch: Branch, margin: F, borderline: bool) -> Verdict<F> {
    Verdict {
        status,
        branch,
        margin,
        borderline,
        witness: None,
        witness_value: None,
        certificate: None,
        reason: None,
    }
}

/// Worst certificate residual relative to its limit (negative iff sound).
fn residual_margin<F: Real>(report: &VerificationReport<F>) -> F {
    let r = &report.residuals;
    [
        r.unitarity - report.unitary_limit,
        r.k_symmetry - report.unitary_limit,
        r.involution - report.unitary_limit,
        r.symmetry - report.symmetry_limit,
        r.c_symmetry - report.symmetry_limit,
    ]
    .into_iter()
    .fold(F::neg_infinity(), F::max)
}

/// Probe the cheap constructive cases: a normal matrix (any size), and at
/// 3×3 a Cartesian part with a repeated eigenvalue or a shared eigenvector.
///
/// Returns `Ok(None)` when no construction applies cleanly. A construction
/// whose detection fires but whose certificate fails verification is skipped
/// rather than trusted.
pub fn shortcut_scan<F: Real>(
    t: &CMatrix<F>,
    tol: &Tolerances<F>,
) -> Result<Option<Verdict<F>>> {
    let pair = cartesian_decompose(t);
    let mut near = false;
    shortcut_scan_inner(t, &pair, tol, &mut near)
}

fn shortcut_scan_inner<F: Real>(
    t: &CMatrix<F>,
    pair: &CartesianPair<F>,
    tol: &Tolerances<F>,
    near: &mut bool,
) -> Result<Option<Verdict<F>>> {
    let n = t.dim();

    // Normal matrix: the Cartesian parts commute and share an eigenbasis.
    // The commutator ‖TT* − T*T‖ scales like ‖T‖², hence the square.
    let scale = F::one().max(t.frobenius_norm());
    let rel_normal = t.normality_defect() / (scale * scale);
    *near |= is_borderline(rel_normal, tol.normal);
    if rel_normal <= tol.normal {
        let cert = commuting_eigenbasis(pair, tol)
            .ok()
            .map(|u| certificate_from_unitary(t, &u))
            .filter(|c| c.sound(t));
        match cert {
            Some(cert) => {
                let mut v = verdict(
                    Status::Uecsm,
                    Branch::Normal,
                    rel_normal - tol.normal,
                    is_borderline(rel_normal, tol.normal),
                );
                v.certificate = Some(cert);
                return Ok(Some(v));
            }
            None => *near = true,
        }
    }
    if n != 3 {
        return Ok(None);
    }

    let eig_a = hermitian_eigen(&pair.a, herm_tol())?;
    let eig_b = hermitian_eigen(&pair.b, herm_tol())?;

    // Repeated eigenvalue in a Cartesian part: that part is λI plus a
    // rank-one deviation, and an aligned eigenbasis of the other part works.
    for (side, part, eig) in [
        (CartesianSide::A, &pair.a, &eig_a),
        (CartesianSide::B, &pair.b, &eig_b),
    ] {
        let pscale = F::one().max(part.frobenius_norm());
        let (mut gap, mut lo) = (F::infinity(), 0usize);
        for i in 0..n - 1 {
            let g = eig.values[i + 1] - eig.values[i];
            if g < gap {
                gap = g;
                lo = i;
            }
        }
        let rel_gap = gap / pscale;
        *near |= is_borderline(rel_gap, tol.eig_gap);
        if rel_gap <= tol.eig_gap {
            let lambda = (eig.values[lo] + eig.values[lo + 1]) * F::lit(0.5);
            let cert = certify_repeated_eigenvalue(t, side, lambda, tol)
                .ok()
                .filter(|c| c.sound(t));
            match cert {
                Some(cert) => {
                    let mut v = verdict(
                        Status::Uecsm,
                        Branch::RepeatedEigenvalue,
                        rel_gap - tol.eig_gap,
                        is_borderline(rel_gap, tol.eig_gap),
                    );
                    v.certificate = Some(cert);
                    return Ok(Some(v));
                }
                None => *near = true,
            }
        }
    }

    // Shared eigenvector: a unit-modulus overlap entry means an eigenvector
    // of A is (up to phase) an eigenvector of B.
    let m = overlap_matrix(&eig_a, &eig_b)?;
    let (mut defect, mut row) = (F::infinity(), 0usize);
    for i in 0..n {
        for j in 0..n {
            let d = F::one() - m[(i, j)].norm();
            if d < defect {
                defect = d;
                row = i;
            }
        }
    }
    *near |= is_borderline(defect, tol.parallel);
    if defect <= tol.parallel {
        let cert = certify_shared_eigenvector(t, &eig_a.vector(row), tol)
            .ok()
            .filter(|c| c.sound(t));
        match cert {
            Some(cert) => {
                let mut v = verdict(
                    Status::Uecsm,
                    Branch::SharedEigenvector,
                    defect - tol.parallel,
                    is_borderline(defect, tol.parallel),
                );
                v.certificate = Some(cert);
                return Ok(Some(v));
            }
            None => *near = true,
        }
    }

    Ok(None)
}

/// Relative magnitude of an overlap entry against the row/column scale the
/// zero classification uses; classified zeros have ratio ≤ `tol.zero`.
fn zero_ratio<F: Real>(m: &CMatrix<F>, i: usize, j: usize, tol: &Tolerances<F>) -> F {
    let thr = zero_threshold(m, i, j, tol);
    if thr > F::zero() {
        m[(i, j)].norm() * tol.zero / thr
    } else {
        F::zero()
    }
}

/// Properize the overlap matrix, run the ratio test, and certify a pass.
fn ratio_decision<F: Real>(
    t: &CMatrix<F>,
    eig_a: &EigenSystem<F>,
    m: &CMatrix<F>,
    tol: &Tolerances<F>,
    mut near: bool,
) -> Result<Verdict<F>> {
    let pp = match make_proper(m, tol) {
        Ok(pp) => pp,
        Err(Error::CannotMakeProper) => {
            let mut v = verdict(Status::Inconclusive, Branch::MultipleZeros, F::zero(), true);
            v.reason = Some(
                "every candidate pivot row or column of the overlap matrix contains a \
                 numerical zero"
                    .into(),
            );
            return Ok(v);
        }
        Err(e) => return Err(e),
    };
    let mp = pp.apply(m);
    let outcome = reality_test(&mp, tol)?;
    near |= outcome.borderline;
    if !outcome.pass {
        let mut v = verdict(Status::NotUecsm, Branch::RealityTest, outcome.margin, near);
        v.witness = outcome.witness;
        v.witness_value = outcome.witness_value;
        return Ok(v);
    }
    let cert = build_certificate(t, eig_a, &pp, m, tol)
        .ok()
        .filter(|c| c.sound(t));
    match cert {
        Some(cert) => {
            let mut v = verdict(Status::Uecsm, Branch::RealityTest, outcome.margin, near);
            v.witness = outcome.witness;
            v.witness_value = outcome.witness_value;
            v.certificate = Some(cert);
            Ok(v)
        }
        None => {
            let mut v = verdict(Status::Inconclusive, Branch::RealityTest, outcome.margin, true);
            v.reason = Some(
                "the overlap ratios are real but the assembled certificate fails its \
                 residual checks"
                    .into(),
            );
            Ok(v)
        }
    }
}

/// Inconclusive stop for a degenerate Cartesian spectrum that no rank-one
/// construction could certify; the ratio test needs simple spectra.
fn degenerate_stop<F: Real>(rel_gap: F, tol: &Tolerances<F>) -> Verdict<F> {
    let mut v = verdict(
        Status::Inconclusive,
        Branch::RepeatedEigenvalue,
        rel_gap - tol.eig_gap,
        true,
    );
    v.reason = Some(
        "a Cartesian part has a within-tolerance repeated eigenvalue but no certifiable \
         rank-one structure; the overlap ratios are basis-dependent here"
            .into(),
    );
    v
}

fn min_rel_gap<F: Real>(part: &CMatrix<F>, eig: &EigenSystem<F>) -> F {
    eig.min_gap() / F::one().max(part.frobenius_norm())
}

/// Full 3×3 decision: shortcuts, then zero classification, then the ratio
/// test with certification.
///
/// Errors propagate (no eigenvalue convergence, dimension mismatch); wrap
/// with [`test_generic`] for a total interface.
pub fn test_3x3<F: Real>(t: &CMatrix<F>, tol: &Tolerances<F>) -> Result<Verdict<F>> {
    let n = t.dim();
    if n != 3 {
        return Err(Error::DimensionMismatch { left: n, right: 3 });
    }
    let pair = cartesian_decompose(t);
    let mut near = false;
    if let Some(v) = shortcut_scan_inner(t, &pair, tol, &mut near)? {
        return Ok(v);
    }

    let eig_a = hermitian_eigen(&pair.a, herm_tol())?;
    let eig_b = hermitian_eigen(&pair.b, herm_tol())?;
    for (part, eig) in [(&pair.a, &eig_a), (&pair.b, &eig_b)] {
        let rel = min_rel_gap(part, eig);
        if rel <= tol.eig_gap {
            return Ok(degenerate_stop(rel, tol));
        }
    }

    let m = overlap_matrix(&eig_a, &eig_b)?;
    let (zeros, zb) = classify_zeros(&m, tol);
    near |= zb;
    if zeros.len() > 1 {
        return multiple_zeros_decision(t, &eig_a, &eig_b, &m, &zeros, tol, near);
    }
    ratio_decision(t, &eig_a, &m, tol, near)
}

/// Two or more vanishing overlap entries at 3×3 force a shared eigenvector;
/// locate it by zero concentration and certify it.
fn multiple_zeros_decision<F: Real>(
    t: &CMatrix<F>,
    eig_a: &EigenSystem<F>,
    eig_b: &EigenSystem<F>,
    m: &CMatrix<F>,
    zeros: &[(usize, usize)],
    tol: &Tolerances<F>,
    near: bool,
) -> Result<Verdict<F>> {
    let n = m.dim();
    let mut row_counts = vec![0usize; n];
    let mut col_counts = vec![0usize; n];
    for &(i, j) in zeros {
        row_counts[i] += 1;
        col_counts[j] += 1;
    }
    let argmax = |counts: &[usize]| {
        counts
            .iter()
            .enumerate()
            .max_by_key(|&(i, &c)| (c, usize::MAX - i))
            .map(|(i, _)| i)
            .unwrap_or(0)
    };
    let bi = argmax(&row_counts);
    let bj = argmax(&col_counts);
    // A row of zeros orthogonalizes one A-eigenvector against most of the
    // B-basis, pinning it to the remaining B-eigenvector; symmetrically for
    // a column.
    let candidate = if row_counts[bi] >= col_counts[bj] {
        eig_a.vector(bi)
    } else {
        eig_b.vector(bj)
    };

    // The margin and witness come from the runner-up zero: the entry whose
    // vanishing promoted "one zero" to "multiple".
    let mut ranked: Vec<((usize, usize), F)> = zeros
        .iter()
        .map(|&(i, j)| ((i, j), zero_ratio(m, i, j, tol)))
        .collect();
    ranked.sort_by(|x, y| x.1.partial_cmp(&y.1).unwrap());
    let (wpos, wratio) = ranked[1];
    let margin = wratio - tol.zero;

    let cert = certify_shared_eigenvector(t, &candidate, tol)
        .ok()
        .filter(|c| c.sound(t));
    match cert {
        Some(cert) => {
            let mut v = verdict(
                Status::Uecsm,
                Branch::MultipleZeros,
                margin,
                near || is_borderline(wratio, tol.zero),
            );
            v.witness = Some(wpos);
            v.witness_value = Some(m[wpos]);
            v.certificate = Some(cert);
            Ok(v)
        }
        None => {
            let mut v = verdict(Status::Inconclusive, Branch::MultipleZeros, margin, true);
            v.witness = Some(wpos);
            v.witness_value = Some(m[wpos]);
            v.reason = Some(
                "multiple vanishing overlaps indicate a shared eigenvector, but none \
                 could be certified at the working tolerances"
                    .into(),
            );
            Ok(v)
        }
    }
}

/// Decide any square complex matrix. Total: every failure mode folds into an
/// `Inconclusive` verdict whose `reason` carries the diagnostic.
pub fn test_generic<F: Real>(t: &CMatrix<F>, tol: &Tolerances<F>) -> Verdict<F> {
    match test_generic_inner(t, tol) {
        Ok(v) => v,
        Err(e) => {
            let mut v = verdict(Status::Inconclusive, Branch::Trivial, F::zero(), true);
            v.reason = Some(e.to_string());
            v
        }
    }
}

fn test_generic_inner<F: Real>(t: &CMatrix<F>, tol: &Tolerances<F>) -> Result<Verdict<F>> {
    if !t.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = t.dim();

    // A 1×1 matrix is symmetric as it stands.
    if n == 1 {
        let cert = certificate_from_unitary(t, &CMatrix::identity(n));
        let margin = residual_margin(&cert.verify(t));
        let mut v = verdict(Status::Uecsm, Branch::Trivial, margin, false);
        v.certificate = Some(cert);
        return Ok(v);
    }

    // Every 2×2 matrix has a symmetric form; the construction is total.
    if n == 2 {
        let cert = certify_2x2(t, tol)?;
        let report = cert.verify(t);
        let margin = residual_margin(&report);
        if report.pass {
            let mut v = verdict(Status::Uecsm, Branch::TwoByTwo, margin, false);
            v.certificate = Some(cert);
            return Ok(v);
        }
        let mut v = verdict(Status::Inconclusive, Branch::TwoByTwo, margin, true);
        v.reason = Some("the 2×2 construction produced an uncertifiable basis".into());
        return Ok(v);
    }

    if n == 3 {
        return test_3x3(t, tol);
    }

    // n ≥ 4: normality shortcut, then the ratio test under simple spectra.
    let pair = cartesian_decompose(t);
    let mut near = false;
    if let Some(v) = shortcut_scan_inner(t, &pair, tol, &mut near)? {
        return Ok(v);
    }
    let eig_a = hermitian_eigen(&pair.a, herm_tol())?;
    let eig_b = hermitian_eigen(&pair.b, herm_tol())?;
    for (part, eig) in [(&pair.a, &eig_a), (&pair.b, &eig_b)] {
        let rel = min_rel_gap(part, eig);
        near |= is_borderline(rel, tol.eig_gap);
        if rel <= tol.eig_gap {
            return Ok(degenerate_stop(rel, tol));
        }
    }
    let m = overlap_matrix(&eig_a, &eig_b)?;
    let (_, zb) = classify_zeros(&m, tol);
    near |= zb;
    ratio_decision(t, &eig_a, &m, tol, near)
}
