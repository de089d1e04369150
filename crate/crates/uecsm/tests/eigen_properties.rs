//! The Jacobi eigensolver against a closed-form characteristic-polynomial
//! oracle, plus the matrix exponential and overlap-matrix invariants.

mod common;

use common::*;
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uecsm::lab::sample_ginibre;
use uecsm::{
    cartesian_decompose, expm_skew_hermitian, hermitian_eigen, overlap_matrix, CMatrix64,
};

#[test]
fn oracle_reproduces_hand_computed_roots() {
    // (z-1)(z-2)(z-3) = z³ - 6z² + 11z - 6
    let roots = cubic_roots(r(-6.0), r(11.0), r(-6.0));
    assert!(root_mismatch(&roots, &[r(1.0), r(2.0), r(3.0)]) < 1e-12);

    // (z² + 1)(z - 2) = z³ - 2z² + z - 2
    let roots = cubic_roots(r(-2.0), r(1.0), r(-2.0));
    assert!(root_mismatch(&roots, &[c(0.0, 1.0), c(0.0, -1.0), r(2.0)]) < 1e-12);

    // (z - 1)³ = z³ - 3z² + 3z - 1: exact triple root.
    let roots = cubic_roots(r(-3.0), r(3.0), r(-1.0));
    assert!(root_mismatch(&roots, &[r(1.0); 3]) < 1e-12);

    // (z - (1+i))(z - 3) = z² - (4+i)z + 3 + 3i
    let roots = quadratic_roots(c(-4.0, -1.0), c(3.0, 3.0));
    assert!(root_mismatch(&roots, &[c(1.0, 1.0), r(3.0)]) < 1e-12);
}

#[test]
fn jacobi_agrees_with_the_oracle_on_random_hermitian_matrices() {
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for n in [2usize, 3] {
            let g: CMatrix64 = sample_ginibre(n, &mut rng);
            let h = cartesian_decompose(&g).a;
            let eig = hermitian_eigen(&h, 1e-12).unwrap();
            let scale = 1.0_f64.max(h.frobenius_norm());

            // Eigenvalues match the closed-form roots.
            let got: Vec<Complex<f64>> = eig.values.iter().map(|&v| r(v)).collect();
            let want: Vec<Complex<f64>> = match n {
                2 => char_roots_2(&h).to_vec(),
                _ => char_roots_3(&h).to_vec(),
            };
            let mismatch = root_mismatch(&got, &want);
            assert!(
                mismatch < 1e-10 * scale,
                "seed {seed}, n {n}: eigenvalue mismatch {mismatch:.3e}"
            );

            // Ascending order.
            for w in eig.values.windows(2) {
                assert!(w[0] <= w[1]);
            }

            // The vectors are orthonormal and actually diagonalize h.
            let vtv = &eig.vectors.adjoint() * &eig.vectors;
            assert!(vtv.distance(&CMatrix64::identity(n)) < 1e-13 * (n as f64));
            assert!(eig.reconstruct().distance(&h) < 1e-12 * scale);
        }
    }
}

#[test]
fn dense_fixture_spectra_match_their_radical_expressions() {
    let pair = cartesian_decompose(&dense3());
    let eig_a = hermitian_eigen(&pair.a, 1e-10).unwrap();
    let eig_b = hermitian_eigen(&pair.b, 1e-10).unwrap();
    for (got, want) in eig_a.values.iter().zip(dense3_a_eigs()) {
        assert!((got - want).abs() < 1e-10, "A: {got} vs {want}");
    }
    for (got, want) in eig_b.values.iter().zip(dense3_b_eigs()) {
        assert!((got - want).abs() < 1e-10, "B: {got} vs {want}");
    }
}

#[test]
fn jordan_fixture_spectra_follow_the_parameter() {
    for a in [r(0.5), r(2.0), Complex::from_polar(1.0, std::f64::consts::PI / 7.0)] {
        let gamma = 0.5 * (1.0 + a.norm_sqr()).sqrt();
        let pair = cartesian_decompose(&jordan(a));
        for part in [&pair.a, &pair.b] {
            let eig = hermitian_eigen(part, 1e-10).unwrap();
            for (got, want) in eig.values.iter().zip([-gamma, 0.0, gamma]) {
                assert!((got - want).abs() < 1e-12, "a = {a}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn fixture_spectra_match_the_oracle() {
    for t in [t1(), t2()] {
        let pair = cartesian_decompose(&t);
        for part in [&pair.a, &pair.b] {
            let eig = hermitian_eigen(part, 1e-10).unwrap();
            let got: Vec<Complex<f64>> = eig.values.iter().map(|&v| r(v)).collect();
            let want = char_roots_3(part);
            assert!(root_mismatch(&got, &want) < 1e-10);
        }
    }
}

#[test]
fn overlap_matrices_of_orthonormal_bases_are_unitary() {
    for seed in [3u64, 17, 92] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair_one = cartesian_decompose(&sample_ginibre::<f64>(3, &mut rng));
        let pair_two = cartesian_decompose(&sample_ginibre::<f64>(3, &mut rng));
        let ga = hermitian_eigen(&pair_one.a, 1e-10).unwrap();
        let hb = hermitian_eigen(&pair_two.a, 1e-10).unwrap();
        let m = overlap_matrix(&ga, &hb).unwrap();
        let mtm = &m.adjoint() * &m;
        assert!(mtm.distance(&CMatrix64::identity(3)) < 1e-12);

        // A system against itself gives the identity exactly up to rounding.
        let self_overlap = overlap_matrix(&ga, &ga).unwrap();
        assert!(self_overlap.distance(&CMatrix64::identity(3)) < 1e-13);
    }
}

#[test]
fn exponential_of_skew_hermitian_inverts_cleanly() {
    for seed in [1u64, 8, 40] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let herm = cartesian_decompose(&sample_ginibre::<f64>(4, &mut rng)).a;
        // i·(Hermitian) is skew-Hermitian to the bit.
        let s = herm.scaled(c(0.0, 1.0));
        let u = expm_skew_hermitian(&s).unwrap();
        let back = expm_skew_hermitian(&s.scaled(r(-1.0))).unwrap();
        assert!((&u.adjoint() * &u).distance(&CMatrix64::identity(4)) < 1e-12);
        assert!((&u * &back).distance(&CMatrix64::identity(4)) < 1e-12);
    }
}
