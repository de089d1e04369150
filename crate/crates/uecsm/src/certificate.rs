//! Certificates of unitary equivalence to a complex symmetric matrix, and
//! the constructive branches that produce them.
//!
//! A certificate is a unitary `U` together with `K = U·Uᵗ` and `S = U*·T·U`.
//! `K` is the kernel of the antilinear conjugation `C x = K·conj(x)`:
//! whenever the residuals vanish, `C` is an isometric involution with
//! `T = C T* C`, which is equivalent to `T` being unitarily equivalent to the
//! complex symmetric matrix `S`.

use crate::cartesian::{cartesian_decompose, CartesianPair, CartesianSide};
use crate::eigen::{hermitian_eigen, overlap_matrix, EigenSystem};
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::proper::{zero_threshold, ProperPair};
use crate::scalar::Real;
use crate::tol::Tolerances;
use crate::vector::CVector;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

/// Unitary-group residuals (`unitarity`, `k_symmetry`, `involution`) must stay
/// below `1e-9 · n`.
pub const CERT_UNITARY_FACTOR: f64 = 1e-9;
/// Symmetry residuals (`symmetry`, `c_symmetry`) must stay below
/// `1e-8 · max(1, ‖T‖_F)`.
pub const CERT_SYMMETRY_FACTOR: f64 = 1e-8;

/// The five residuals that make a certificate checkable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals<F> {
    /// `‖U*U − I‖_F`
    pub unitarity: F,
    /// `‖K − Kᵗ‖_F`
    pub k_symmetry: F,
    /// `‖K·conj(K) − I‖_F`
    pub involution: F,
    /// `‖S − Sᵗ‖_F`
    pub symmetry: F,
    /// `‖K·Tᵗ·conj(K) − T‖_F`
    pub c_symmetry: F,
}

impl<F: Real> Residuals<F> {
    /// All-zero placeholder for certificates loaded without a residual block.
    pub fn zeroed() -> Self {
        Residuals {
            unitarity: F::zero(),
            k_symmetry: F::zero(),
            involution: F::zero(),
            symmetry: F::zero(),
            c_symmetry: F::zero(),
        }
    }
}

/// An explicit witness that `T` is unitarily equivalent to a complex
/// symmetric matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "F: Real + Serialize",
    deserialize = "F: Real + Deserialize<'de>"
))]
pub struct Certificate<F> {
    /// The unitary change of basis.
    #[serde(rename = "U")]
    pub u: CMatrix<F>,
    /// Conjugation kernel `U·Uᵗ`.
    #[serde(rename = "K")]
    pub k: CMatrix<F>,
    /// Symmetric form `U*·T·U`.
    #[serde(rename = "S")]
    pub s: CMatrix<F>,
    /// Stored for inspection only — [`Certificate::verify`] recomputes them,
    /// so a hand-written certificate may omit this block.
    #[serde(default = "Residuals::zeroed")]
    pub residuals: Residuals<F>,
}

impl<F: Real> Certificate<F> {
    /// Re-check this certificate against `t`.
    pub fn verify(&self, t: &CMatrix<F>) -> VerificationReport<F> {
        verify_certificate(t, &self.u, &self.k, &self.s)
    }

    /// All residuals within the documented limits for `t`?
    pub fn sound(&self, t: &CMatrix<F>) -> bool {
        self.verify(t).pass
    }
}

/// Outcome of [`verify_certificate`]: the residuals, the limits they were
/// held against, and the overall flag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport<F> {
    pub residuals: Residuals<F>,
    /// Limit applied to `unitarity`, `k_symmetry`, `involution`.
    pub unitary_limit: F,
    /// Limit applied to `symmetry`, `c_symmetry`.
    pub symmetry_limit: F,
    pub pass: bool,
}

impl<F: Real> VerificationReport<F> {
    /// Names of the residuals that exceeded their limit.
    pub fn failures(&self) -> Vec<&'static str> {
        let r = &self.residuals;
        let mut out = Vec::new();
        if r.unitarity > self.unitary_limit {
            out.push("unitarity");
        }
        if r.k_symmetry > self.unitary_limit {
            out.push("k_symmetry");
        }
        if r.involution > self.unitary_limit {
            out.push("involution");
        }
        if r.symmetry > self.symmetry_limit {
            out.push("symmetry");
        }
        if r.c_symmetry > self.symmetry_limit {
            out.push("c_symmetry");
        }
        out
    }
}

/// Measure how well `(U, K, S)` certifies `T`.
///
/// Checks `‖U*U − I‖`, `‖K − Kᵗ‖`, `‖K·conj(K) − I‖`, `‖S − Sᵗ‖` and the
/// C-symmetry relation `‖K·Tᵗ·conj(K) − T‖`. The first three are held to
/// `1e-9·n`, the last two to `1e-8·max(1, ‖T‖_F)`.
pub fn verify_certificate<F: Real>(
    t: &CMatrix<F>,
    u: &CMatrix<F>,
    k: &CMatrix<F>,
    s: &CMatrix<F>,
) -> VerificationReport<F> {
    let n = t.dim();
    let eye = CMatrix::identity(n);
    let residuals = Residuals {
        unitarity: (&u.adjoint() * u).distance(&eye),
        k_symmetry: k.symmetric_defect(),
        involution: (k * &k.conj()).distance(&eye),
        symmetry: s.symmetric_defect(),
        c_symmetry: (&(k * &t.transpose()) * &k.conj()).distance(t),
    };
    let unitary_limit = F::lit(CERT_UNITARY_FACTOR) * F::from_usize(n).unwrap_or_else(F::one);
    let symmetry_limit = F::lit(CERT_SYMMETRY_FACTOR) * F::one().max(t.frobenius_norm());
    let pass = residuals.unitarity <= unitary_limit
        && residuals.k_symmetry <= unitary_limit
        && residuals.involution <= unitary_limit
        && residuals.symmetry <= symmetry_limit
        && residuals.c_symmetry <= symmetry_limit;
    VerificationReport {
        residuals,
        unitary_limit,
        symmetry_limit,
        pass,
    }
}

/// Package a unitary into a full certificate for `t`, residuals included.
pub(crate) fn certificate_from_unitary<F: Real>(t: &CMatrix<F>, u: &CMatrix<F>) -> Certificate<F> {
    let k = u * &u.transpose();
    let s = &(&u.adjoint() * t) * u;
    let residuals = verify_certificate(t, u, &k, &s).residuals;
    Certificate {
        u: u.clone(),
        k,
        s,
        residuals,
    }
}

/// Certificate for the generic branch, after a passed reality test.
///
/// Takes the eigensystem of `A`, the relabeling `pp` that properized the
/// overlap matrix `m`, and rescales each relabeled eigenvector beyond the
/// first so its overlap with the first `B`-eigenvector becomes real positive.
/// The columns then form a basis of conjugation-fixed vectors, so `U·Uᵗ` is
/// the kernel of a conjugation commuting with the whole pair.
pub fn build_certificate<F: Real>(
    t: &CMatrix<F>,
    eig_a: &EigenSystem<F>,
    pp: &ProperPair<F>,
    m: &CMatrix<F>,
    tol: &Tolerances<F>,
) -> Result<Certificate<F>> {
    let n = t.dim();
    let mp = pp.apply(m);
    let mut cols: Vec<CVector<F>> = (0..n)
        .map(|i| eig_a.vector(pp.row_perm[i]).scaled(pp.row_phases[i]))
        .collect();
    for (i, col) in cols.iter_mut().enumerate().skip(1) {
        let z = mp[(i, 0)];
        let zn = z.norm();
        if zn <= zero_threshold(&mp, i, 0, tol) {
            return Err(Error::ZeroDenominator { row: i, col: 0 });
        }
        *col = col.scaled(z.conj() / zn);
    }
    let u = CMatrix::from_cols(&cols);
    Ok(certificate_from_unitary(t, &u))
}

/// Ranges of adjacent (ascending) values whose gaps stay within `thr`.
fn cluster_ranges<F: Real>(values: &[F], thr: F) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > thr {
            out.push((start, i));
            start = i;
        }
    }
    out
}

/// Extend an orthonormal seed family to a full orthonormal basis of `C^n` by
/// Gram–Schmidt over the standard basis (deterministic; re-orthogonalizes
/// once for stability).
fn complete_to_unitary<F: Real>(seed: &[CVector<F>]) -> Vec<CVector<F>> {
    assert!(!seed.is_empty());
    let n = seed[0].dim();
    let mut basis: Vec<CVector<F>> = seed.to_vec();
    for k in 0..n {
        if basis.len() == n {
            break;
        }
        let mut w = CVector::basis(n, k);
        for _ in 0..2 {
            for b in &basis {
                let coef = w.inner(b);
                w = w.sub(&b.scaled(coef));
            }
        }
        // At most one standard vector can be nearly parallel to a unit seed,
        // so this acceptance threshold always leaves enough candidates.
        if w.norm() > F::lit(0.3) {
            basis.push(w.normalized());
        }
    }
    assert_eq!(basis.len(), n, "orthonormal completion failed");
    basis
}

/// Joint eigenbasis for a commuting (normal) pair: eigenbasis of `A`,
/// re-diagonalizing `B` inside every near-degenerate eigenspace of `A`.
pub fn commuting_eigenbasis<F: Real>(
    pair: &CartesianPair<F>,
    tol: &Tolerances<F>,
) -> Result<CMatrix<F>> {
    let eig_a = hermitian_eigen(&pair.a, F::lit(1e-10))?;
    let n = eig_a.dim();
    let thr = tol.eig_gap * F::one().max(pair.a.frobenius_norm());
    let mut cols: Vec<CVector<F>> = (0..n).map(|i| eig_a.vector(i)).collect();
    for (start, end) in cluster_ranges(&eig_a.values, thr) {
        let d = end - start;
        if d < 2 {
            continue;
        }
        let bv: Vec<CVector<F>> = (start..end).map(|i| pair.b.mul_vec(&cols[i])).collect();
        let b_sub = CMatrix::from_fn(d, |r, c| bv[c].inner(&cols[start + r]));
        let w = hermitian_eigen(&b_sub, F::lit(1e-8))?;
        let rotated: Vec<CVector<F>> = (0..d)
            .map(|r| {
                let mut acc = CVector::zeros(n);
                for k in 0..d {
                    acc = acc.add(&cols[start + k].scaled(w.vectors[(k, r)]));
                }
                acc
            })
            .collect();
        cols.splice(start..end, rotated);
    }
    Ok(CMatrix::from_cols(&cols))
}

/// Rephase (and, inside near-degenerate clusters, rotate) an eigenbasis so
/// that every column has a real non-negative overlap with `w`.
fn align_eigenbasis_to<F: Real>(
    eig: &EigenSystem<F>,
    w: &CVector<F>,
    cluster_thr: F,
    floor: F,
) -> CMatrix<F> {
    let n = eig.dim();
    let mut cols: Vec<CVector<F>> = (0..n).map(|i| eig.vector(i)).collect();
    for (start, end) in cluster_ranges(&eig.values, cluster_thr) {
        let d = end - start;
        if d == 1 {
            let z = w.inner(&cols[start]);
            let zn = z.norm();
            if zn > floor {
                cols[start] = cols[start].scaled(z / zn);
            }
            continue;
        }
        // Rotate the cluster so w's projection into it lies along the first
        // basis vector; the rest of the cluster becomes orthogonal to w.
        let coeffs = CVector::from_fn(d, |k| w.inner(&cols[start + k]));
        let cn = coeffs.norm();
        if cn <= floor {
            continue;
        }
        let chat = coeffs.normalized();
        let wbasis = complete_to_unitary(&[chat]);
        let rotated: Vec<CVector<F>> = (0..d)
            .map(|r| {
                let mut acc = CVector::zeros(n);
                for k in 0..d {
                    acc = acc.add(&cols[start + k].scaled(wbasis[r][k]));
                }
                acc
            })
            .collect();
        cols.splice(start..end, rotated);
    }
    CMatrix::from_cols(&cols)
}

/// Certificate when the designated Cartesian part has an eigenvalue `lambda`
/// of multiplicity at least `n − 1`, i.e. deviates from `λI` by rank ≤ 1.
///
/// Writing the pair as `(P, Q)` with `Q` the degenerate part: when
/// `Q = λI` any eigenbasis of `P` works outright; when `Q = λI + s·ww*` an
/// eigenbasis of `P` aligned so every `⟨w, u_i⟩` is real non-negative turns
/// both `U*PU` and `U*QU` into real symmetric matrices, hence `U*TU`
/// symmetric. Fails with [`Error::PreconditionViolated`] when `lambda` does
/// not have the required multiplicity.
pub fn certify_repeated_eigenvalue<F: Real>(
    t: &CMatrix<F>,
    side: CartesianSide,
    lambda: F,
    tol: &Tolerances<F>,
) -> Result<Certificate<F>> {
    let n = t.dim();
    let pair = cartesian_decompose(t);
    let (q, p) = match side {
        CartesianSide::A => (&pair.a, &pair.b),
        CartesianSide::B => (&pair.b, &pair.a),
    };
    let eig_q = hermitian_eigen(q, F::lit(1e-10))?;
    let thr_q = tol.eig_gap * F::one().max(q.frobenius_norm());
    let outliers: Vec<usize> = (0..n)
        .filter(|&i| (eig_q.values[i] - lambda).abs() > thr_q)
        .collect();
    if outliers.len() > 1 {
        return Err(Error::PreconditionViolated);
    }

    let eig_p = hermitian_eigen(p, F::lit(1e-10))?;
    let u = match outliers.first() {
        // Q ≈ λI exactly: nothing to align.
        None => eig_p.vectors,
        Some(&k) => {
            let w = eig_q.vector(k);
            let thr_p = tol.eig_gap * F::one().max(p.frobenius_norm());
            align_eigenbasis_to(&eig_p, &w, thr_p, tol.zero)
        }
    };
    Ok(certificate_from_unitary(t, &u))
}

/// Loose acceptance limit for a claimed shared eigenvector, matched to the
/// parallelism threshold that detects one: an overlap within `tol.parallel`
/// of 1 corresponds to an angle ~`√(2·tol.parallel)`.
fn shared_residual_limit<F: Real>(tol: &Tolerances<F>, scale: F) -> F {
    F::lit(10.0) * (F::lit(2.0) * tol.parallel).sqrt() * F::one().max(scale)
}

/// Certificate from a common eigenvector of `A` and `B` (3×3 only).
///
/// Rotating the shared direction into the first coordinate block-diagonalizes
/// `T` as `(1×1) ⊕ (2×2)`; the 2×2 block is certified by [`certify_2x2`] and
/// the pieces are reassembled. Fails with [`Error::NotSharedEigenvector`]
/// when the residual of `shared` as an eigenvector of either part is too
/// large.
pub fn certify_shared_eigenvector<F: Real>(
    t: &CMatrix<F>,
    shared: &CVector<F>,
    tol: &Tolerances<F>,
) -> Result<Certificate<F>> {
    let n = t.dim();
    if n != 3 {
        return Err(Error::DimensionMismatch { left: n, right: 3 });
    }
    if shared.norm() <= F::min_positive_value() {
        return Err(Error::NotSharedEigenvector {
            residual: f64::INFINITY,
            limit: 0.0,
        });
    }
    let v = shared.normalized();
    let pair = cartesian_decompose(t);
    for part in [&pair.a, &pair.b] {
        let pv = part.mul_vec(&v);
        let theta = pv.inner(&v).re;
        let residual = pv.sub(&v.scaled(Complex::new(theta, F::zero()))).norm();
        let limit = shared_residual_limit(tol, part.frobenius_norm());
        if residual > limit {
            return Err(Error::NotSharedEigenvector {
                residual: residual.as_f64(),
                limit: limit.as_f64(),
            });
        }
    }

    let wcols = complete_to_unitary(&[v]);
    let w = CMatrix::from_cols(&wcols);
    let t_rot = &(&w.adjoint() * t) * &w;
    let sub = CMatrix::from_fn(2, |i, j| t_rot[(i + 1, j + 1)]);
    let cert2 = certify_2x2(&sub, tol)?;
    let mut embed = CMatrix::identity(3);
    for i in 0..2 {
        for j in 0..2 {
            embed[(i + 1, j + 1)] = cert2.u[(i, j)];
        }
    }
    let u = &w * &embed;
    Ok(certificate_from_unitary(t, &u))
}

/// Total 2×2 construction: every 2×2 matrix is unitarily equivalent to a
/// complex symmetric one.
///
/// Near-degenerate spectra fall back to the eigenbasis of the non-scalar
/// part, vanishing overlap entries to the joint (commuting) eigenbasis, and
/// the generic case rescales the two `A`-eigenvectors so their overlaps with
/// the first `B`-eigenvector are real positive — which is already enough to
/// make `U*TU` symmetric in dimension two.
pub fn certify_2x2<F: Real>(t: &CMatrix<F>, tol: &Tolerances<F>) -> Result<Certificate<F>> {
    let n = t.dim();
    if n != 2 {
        return Err(Error::DimensionMismatch { left: n, right: 2 });
    }
    let pair = cartesian_decompose(t);
    let eig_a = hermitian_eigen(&pair.a, F::lit(1e-10))?;
    let eig_b = hermitian_eigen(&pair.b, F::lit(1e-10))?;
    let rel_gap = |eig: &EigenSystem<F>, m: &CMatrix<F>| {
        (eig.values[1] - eig.values[0]) / F::one().max(m.frobenius_norm())
    };
    let gap_a = rel_gap(&eig_a, &pair.a);
    let gap_b = rel_gap(&eig_b, &pair.b);
    if gap_a.min(gap_b) <= tol.eig_gap {
        // One part is within threshold of a scalar; the other part's
        // eigenbasis diagonalizes T up to that defect.
        let u = if gap_a <= gap_b {
            &eig_b.vectors
        } else {
            &eig_a.vectors
        };
        return Ok(certificate_from_unitary(t, u));
    }

    let m = overlap_matrix(&eig_a, &eig_b)?;
    let vanishing = (0..2).any(|i| {
        (0..2).any(|j| m[(i, j)].norm() <= zero_threshold(&m, i, j, tol))
    });
    if vanishing {
        // A vanishing overlap in dimension two means the bases match up to
        // order and phase: T is normal. Use the joint eigenbasis.
        let u = commuting_eigenbasis(&pair, tol)?;
        return Ok(certificate_from_unitary(t, &u));
    }

    let phase = |z: Complex<F>| z.conj() / z.norm();
    let cols = [
        eig_a.vector(0).scaled(phase(m[(0, 0)])),
        eig_a.vector(1).scaled(phase(m[(1, 0)])),
    ];
    let u = CMatrix::from_cols(&cols);
    Ok(certificate_from_unitary(t, &u))
}
