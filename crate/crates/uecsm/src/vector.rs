//! Complex column vectors.

use crate::scalar::Real;
use num_complex::Complex;
use std::ops::{Index, IndexMut};

/// A dense complex vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector<F> {
    data: Vec<Complex<F>>,
}

impl<F: Real> CVector<F> {
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "vector dimension must be positive");
        CVector {
            data: vec![Complex::new(F::zero(), F::zero()); n],
        }
    }

    pub fn from_slice(entries: &[Complex<F>]) -> Self {
        assert!(!entries.is_empty());
        CVector {
            data: entries.to_vec(),
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize) -> Complex<F>) -> Self {
        CVector {
            data: (0..n).map(&mut f).collect(),
        }
    }

    /// Standard basis vector `e_k`.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = Self::zeros(n);
        v[k] = Complex::new(F::one(), F::zero());
        v
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    /// Inner product `⟨self, other⟩ = Σ_k self_k · conj(other_k)`.
    ///
    /// Linear in `self`, conjugate-linear in `other`. All overlap-matrix
    /// entries in this crate follow this convention.
    pub fn inner(&self, other: &Self) -> Complex<F> {
        assert_eq!(self.dim(), other.dim());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| *a * b.conj())
            .fold(Complex::new(F::zero(), F::zero()), |acc, z| acc + z)
    }

    pub fn norm(&self) -> F {
        self.data
            .iter()
            .fold(F::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    pub fn scaled(&self, z: Complex<F>) -> Self {
        CVector {
            data: self.data.iter().map(|w| *w * z).collect(),
        }
    }

    /// Unit vector in the same direction; the zero vector is returned unchanged.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == F::zero() {
            return self.clone();
        }
        CVector {
            data: self.data.iter().map(|w| *w / n).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        CVector {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        CVector {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }
}

impl<F> Index<usize> for CVector<F> {
    type Output = Complex<F>;
    fn index(&self, i: usize) -> &Complex<F> {
        &self.data[i]
    }
}

impl<F> IndexMut<usize> for CVector<F> {
    fn index_mut(&mut self, i: usize) -> &mut Complex<F> {
        &mut self.data[i]
    }
}
