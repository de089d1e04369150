//! Shared fixtures and an independent characteristic-polynomial oracle used
//! by the integration tests.
//!
//! The oracle computes eigenvalues of 2×2 and 3×3 matrices from closed-form
//! root formulas (quadratic formula, Cardano's method) — no iteration, no
//! code shared with the library's Jacobi solver — so solver and oracle can
//! only agree by being right.

#![allow(dead_code)]

use num_complex::Complex;
use uecsm::CMatrix64;

pub type C = Complex<f64>;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn r(x: f64) -> C {
    C::new(x, 0.0)
}

pub fn mat3(rows: [[C; 3]; 3]) -> CMatrix64 {
    CMatrix64::from_rows(rows.iter().map(|row| row.to_vec()).collect()).unwrap()
}

/// Upper-triangular test matrix that satisfies the reality condition.
pub fn t1() -> CMatrix64 {
    mat3([
        [r(0.0), r(7.0), r(0.0)],
        [r(0.0), r(1.0), r(-5.0)],
        [r(0.0), r(0.0), r(6.0)],
    ])
}

/// One diagonal entry away from [`t1`], and no longer equivalent to a
/// symmetric matrix.
pub fn t2() -> CMatrix64 {
    mat3([
        [r(0.0), r(7.0), r(0.0)],
        [r(0.0), r(1.0), r(-5.0)],
        [r(0.0), r(0.0), r(3.0)],
    ])
}

/// Nilpotent Jordan-type matrix with parameter `a`; equivalent to a complex
/// symmetric matrix exactly when `|a| = 1`.
pub fn jordan(a: C) -> CMatrix64 {
    mat3([
        [r(0.0), r(1.0), r(0.0)],
        [r(0.0), r(0.0), a],
        [r(0.0), r(0.0), r(0.0)],
    ])
}

/// Dense matrix with closed-form certificate data ([`dense3_u`],
/// [`dense3_k`], [`dense3_s`]).
pub fn dense3() -> CMatrix64 {
    let s2 = 2.0_f64.sqrt();
    mat3([
        [c(1.0, 4.0), c(-2.0 * s2, -s2), c(-1.0, -4.0)],
        [c(0.0, s2), r(0.0), c(0.0, s2)],
        [r(-1.0), c(2.0 * s2, -s2), r(1.0)],
    ])
}

/// Hermitian-part eigenvalues of [`dense3`], ascending.
pub fn dense3_a_eigs() -> [f64; 3] {
    let s2 = 2.0_f64.sqrt();
    [-2.0, 2.0 - 2.0 * s2, 2.0 + 2.0 * s2]
}

/// Skew-part eigenvalues of [`dense3`], ascending.
pub fn dense3_b_eigs() -> [f64; 3] {
    let s3 = 3.0_f64.sqrt();
    [2.0 - 2.0 * s3, 0.0, 2.0 + 2.0 * s3]
}

/// A closed-form unitary that brings [`dense3`] to symmetric form.
pub fn dense3_u() -> CMatrix64 {
    let s2 = 2.0_f64.sqrt();
    let s6 = 6.0_f64.sqrt();
    let s24 = 24.0_f64.sqrt();
    let alpha = c(2.0, -s2) / s6;
    let beta = c(2.0, s2) / s6;
    let g1 = [c(-1.0, -2.0 * s2), c(2.0, s2), r(3.0)];
    let g2 = [r(1.0), c(0.0, -s2), r(1.0)];
    let g3 = [c(-1.0, 2.0 * s2), c(-2.0, s2), r(3.0)];
    let cols: Vec<Vec<C>> = vec![
        g1.iter().map(|&z| alpha * z / s24).collect(),
        g2.iter().map(|&z| z / 2.0).collect(),
        g3.iter().map(|&z| beta * z / s24).collect(),
    ];
    CMatrix64::from_fn(3, |i, j| cols[j][i])
}

/// Conjugation kernel `U·Uᵗ` belonging to [`dense3_u`].
pub fn dense3_k() -> CMatrix64 {
    let is2 = c(0.0, -1.0 / 2.0_f64.sqrt());
    mat3([
        [r(0.5), is2, r(-0.5)],
        [is2, r(0.0), is2],
        [r(-0.5), is2, r(0.5)],
    ])
}

/// Symmetric form `U*·T·U` belonging to [`dense3_u`].
pub fn dense3_s() -> CMatrix64 {
    let s2 = 2.0_f64.sqrt();
    mat3([
        [c(2.0 * (1.0 + s2), 2.0), c(0.0, -2.0), c(0.0, 2.0)],
        [c(0.0, -2.0), r(-2.0), c(0.0, -2.0)],
        [c(0.0, 2.0), c(0.0, -2.0), c(2.0 * (1.0 - s2), 2.0)],
    ])
}

// ---------------------------------------------------------------------------
// Characteristic-polynomial oracle.

fn trace(m: &CMatrix64) -> C {
    (0..m.dim()).map(|i| m[(i, i)]).sum()
}

fn det3(m: &CMatrix64) -> C {
    m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
        - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
        + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)])
}

/// Roots of `z² + bz + c`.
pub fn quadratic_roots(b: C, cc: C) -> [C; 2] {
    let d = (b * b - 4.0 * cc).sqrt();
    [(-b + d) / 2.0, (-b - d) / 2.0]
}

/// Roots of `z³ + c2·z² + c1·z + c0` by Cardano's method.
pub fn cubic_roots(c2: C, c1: C, c0: C) -> [C; 3] {
    // Depress: z = w − c2/3 turns the cubic into w³ + p·w + q.
    let p = c1 - c2 * c2 / 3.0;
    let q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    let shift = -c2 / 3.0;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    // Pick the branch with the larger modulus to avoid cancellation; both
    // candidates vanish only when p = q = 0 (triple root).
    let cand_a = -q / 2.0 + disc;
    let cand_b = -q / 2.0 - disc;
    let u3 = if cand_a.norm() >= cand_b.norm() {
        cand_a
    } else {
        cand_b
    };
    if u3.norm() == 0.0 {
        return [shift; 3];
    }
    let u = u3.cbrt();
    let omega = C::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let mut roots = [C::new(0.0, 0.0); 3];
    let mut uk = u;
    for root in &mut roots {
        *root = uk - p / (3.0 * uk) + shift;
        uk *= omega;
    }
    roots
}

/// Eigenvalues of a 2×2 complex matrix, closed form.
pub fn char_roots_2(m: &CMatrix64) -> [C; 2] {
    let tr = trace(m);
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    quadratic_roots(-tr, det)
}

/// Eigenvalues of a 3×3 complex matrix, closed form.
pub fn char_roots_3(m: &CMatrix64) -> [C; 3] {
    let tr = trace(m);
    let tr_sq = trace(&(m * m));
    let c2 = -tr;
    let c1 = (tr * tr - tr_sq) / 2.0;
    let c0 = -det3(m);
    cubic_roots(c2, c1, c0)
}

/// Real parts sorted ascending; panics if any root has a significant
/// imaginary part (i.e. the input was not essentially Hermitian).
pub fn real_spectrum_3(m: &CMatrix64) -> [f64; 3] {
    let roots = char_roots_3(m);
    let scale = 1.0_f64.max(m.frobenius_norm());
    let mut out = [0.0; 3];
    for (slot, root) in out.iter_mut().zip(roots.iter()) {
        assert!(
            root.im.abs() <= 1e-8 * scale,
            "expected a real spectrum, found root {root}"
        );
        *slot = root.re;
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// Greedy-match two root multisets and return the largest pairwise distance.
pub fn root_mismatch(a: &[C], b: &[C]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut remaining: Vec<C> = b.to_vec();
    let mut worst = 0.0_f64;
    for &x in a {
        let (idx, dist) = remaining
            .iter()
            .enumerate()
            .map(|(i, &y)| (i, (x - y).norm()))
            .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap())
            .expect("non-empty");
        worst = worst.max(dist);
        remaining.swap_remove(idx);
    }
    worst
}
