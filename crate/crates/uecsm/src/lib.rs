//! Decide whether a complex square matrix is **UECSM** — unitarily equivalent
//! to a complex symmetric matrix — and, when it is, produce an explicit
//! certificate: a unitary change of basis `U`, the conjugation kernel
//! `K = U·Uᵗ`, and the symmetric form `S = U*·T·U`.
//!
//! The decision splits `T = A + iB` into its Hermitian and skew-Hermitian
//! parts, diagonalizes `A` and `B` with a cyclic Jacobi sweep, and compares
//! the two orthonormal eigenbases through their overlap matrix. After the
//! overlap matrix is put into *proper* form (zero-free first row and column,
//! real positive corner), `T` is UECSM exactly when certain ratios of overlap
//! entries are real. For 3×3 input the test is complete; for larger matrices
//! it decides whenever both spectra are simple and a proper form exists, and
//! reports `Inconclusive` otherwise. Degenerate inputs (normal matrices,
//! repeated eigenvalues, shared eigenvectors) are resolved by dedicated
//! constructive branches before the ratio test runs.
//!
//! The [`lab`] module samples random ensembles (Ginibre, Haar-like unitaries
//! via the exponential map, partial isometries) and runs the decision over
//! many trials with reproducible per-trial RNG streams.
//!
//! Everything is generic over the underlying real scalar through the
//! [`Real`] trait; `f64` aliases are exported at the crate root and are what
//! the command-line tool uses.
//!
//! ```
//! use uecsm::{CMatrix64, Tolerances64, test_generic, Status};
//! use num_complex::Complex;
//!
//! let z = |re: f64, im: f64| Complex::new(re, im);
//! let t = CMatrix64::from_rows(vec![
//!     vec![z(0.0, 0.0), z(7.0, 0.0), z(0.0, 0.0)],
//!     vec![z(0.0, 0.0), z(1.0, 0.0), z(-5.0, 0.0)],
//!     vec![z(0.0, 0.0), z(0.0, 0.0), z(6.0, 0.0)],
//! ]).unwrap();
//! let verdict = test_generic(&t, &Tolerances64::default());
//! assert_eq!(verdict.status, Status::Uecsm);
//! let cert = verdict.certificate.unwrap();
//! assert!(cert.residuals.c_symmetry < 1e-9);
//! ```

pub mod cartesian;
pub mod certificate;
pub mod eigen;
pub mod error;
pub mod lab;
pub mod matrix;
pub mod pipeline;
pub mod proper;
pub mod reality;
pub mod scalar;
pub mod tol;
pub mod vector;
pub mod verdict;

pub use cartesian::{cartesian_decompose, CartesianPair, CartesianSide};
pub use certificate::{
    build_certificate, certify_2x2, certify_repeated_eigenvalue, certify_shared_eigenvector,
    commuting_eigenbasis, verify_certificate, Certificate, Residuals, VerificationReport,
};
pub use eigen::{expm_skew_hermitian, hermitian_eigen, overlap_matrix, EigenSystem};
pub use error::Error;
pub use matrix::CMatrix;
pub use pipeline::{shortcut_scan, test_3x3, test_generic};
pub use proper::{make_proper, ProperPair};
pub use reality::{reality_test, RealityOutcome};
pub use scalar::Real;
pub use tol::Tolerances;
pub use vector::CVector;
pub use verdict::{Branch, Status, Verdict};

/// Concrete double-precision aliases; this is the precision the CLI runs at.
pub type CMatrix64 = CMatrix<f64>;
pub type CVector64 = CVector<f64>;
pub type EigenSystem64 = EigenSystem<f64>;
pub type Tolerances64 = Tolerances<f64>;
pub type Verdict64 = Verdict<f64>;
pub type Certificate64 = Certificate<f64>;

/// Single-precision aliases, mainly useful with loosened [`Tolerances`].
pub type CMatrix32 = CMatrix<f32>;
pub type CVector32 = CVector<f32>;
