//! Square complex matrices in row-major storage.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::vector::CVector;
use num_complex::Complex;
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

/// A dense square matrix over `Complex<F>`.
///
/// Serialized as `{"n": .., "re": [[..]], "im": [[..]]}` with real and
/// imaginary parts split into `n×n` arrays of plain numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<F> {
    n: usize,
    data: Vec<Complex<F>>,
}

impl<F: Real> CMatrix<F> {
    /// The `n×n` zero matrix.
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        CMatrix {
            n,
            data: vec![Complex::new(F::zero(), F::zero()); n * n],
        }
    }

    /// The `n×n` identity.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex::new(F::one(), F::zero());
        }
        m
    }

    /// Build from a list of equally long rows; fails on ragged or non-square input.
    pub fn from_rows(rows: Vec<Vec<Complex<F>>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotSquare {
                row: 0,
                len: 0,
                expected: 1,
            });
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row: i + 1,
                    len: r.len(),
                    expected: n,
                });
            }
        }
        Ok(CMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Build entrywise from a closure over `(row, col)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex<F>) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Diagonal matrix from the given entries.
    pub fn from_diag(diag: &[Complex<F>]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    /// Plain transpose, no conjugation.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(i, j)].conj())
    }

    /// Multiply every entry by a complex scalar.
    pub fn scaled(&self, z: Complex<F>) -> Self {
        Self::from_fn(self.n, |i, j| self[(i, j)] * z)
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> F {
        self.data
            .iter()
            .fold(F::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// `‖self − other‖_F` without forming the difference.
    pub fn distance(&self, other: &Self) -> F {
        assert_eq!(self.n, other.n, "distance requires equal dimensions");
        self.data
            .iter()
            .zip(&other.data)
            .fold(F::zero(), |acc, (a, b)| acc + (*a - *b).norm_sqr())
            .sqrt()
    }

    /// Largest entry modulus.
    pub fn max_modulus(&self) -> F {
        self.data
            .iter()
            .fold(F::zero(), |acc, z| acc.max(z.norm()))
    }

    /// True when every entry is finite in both components.
    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Column `j` as a vector.
    pub fn col(&self, j: usize) -> CVector<F> {
        CVector::from_fn(self.n, |i| self[(i, j)])
    }

    /// Overwrite column `j`.
    pub fn set_col(&mut self, j: usize, v: &CVector<F>) {
        assert_eq!(v.dim(), self.n);
        for i in 0..self.n {
            self[(i, j)] = v[i];
        }
    }

    /// Assemble a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[CVector<F>]) -> Self {
        let n = cols.len();
        assert!(cols.iter().all(|c| c.dim() == n), "columns must have length n");
        Self::from_fn(n, |i, j| cols[j][i])
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &CVector<F>) -> CVector<F> {
        assert_eq!(self.n, v.dim());
        CVector::from_fn(self.n, |i| {
            (0..self.n)
                .map(|k| self[(i, k)] * v[k])
                .fold(Complex::new(F::zero(), F::zero()), |a, b| a + b)
        })
    }

    /// `‖M − M*‖_F`: how far from Hermitian.
    pub fn hermitian_defect(&self) -> F {
        self.distance(&self.adjoint())
    }

    /// `‖M − Mᵗ‖_F`: how far from complex symmetric.
    pub fn symmetric_defect(&self) -> F {
        self.distance(&self.transpose())
    }

    /// `‖M M* − M* M‖_F`: how far from normal.
    pub fn normality_defect(&self) -> F {
        let ad = self.adjoint();
        (&(self * &ad) - &(&ad * self)).frobenius_norm()
    }
}

impl<F> Index<(usize, usize)> for CMatrix<F> {
    type Output = Complex<F>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<F> {
        &self.data[i * self.n + j]
    }
}

impl<F> IndexMut<(usize, usize)> for CMatrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<F> {
        &mut self.data[i * self.n + j]
    }
}

impl<F: Real> Add for &CMatrix<F> {
    type Output = CMatrix<F>;
    fn add(self, rhs: Self) -> CMatrix<F> {
        assert_eq!(self.n, rhs.n);
        CMatrix::from_fn(self.n, |i, j| self[(i, j)] + rhs[(i, j)])
    }
}

impl<F: Real> Sub for &CMatrix<F> {
    type Output = CMatrix<F>;
    fn sub(self, rhs: Self) -> CMatrix<F> {
        assert_eq!(self.n, rhs.n);
        CMatrix::from_fn(self.n, |i, j| self[(i, j)] - rhs[(i, j)])
    }
}

impl<F: Real> Mul for &CMatrix<F> {
    type Output = CMatrix<F>;
    fn mul(self, rhs: Self) -> CMatrix<F> {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        CMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self[(i, k)] * rhs[(k, j)])
                .fold(Complex::new(F::zero(), F::zero()), |a, b| a + b)
        })
    }
}

impl<F: Real> fmt::Display for CMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    write!(f, "  ")?;
                }
                let z = self[(i, j)];
                write!(f, "{}{}{}i", z.re, if z.im < F::zero() { "-" } else { "+" }, z.im.abs())?;
            }
            if i + 1 < self.n {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl<F: Real + Serialize> Serialize for CMatrix<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.n;
        let part = |pick: fn(&Complex<F>) -> F| -> Vec<Vec<F>> {
            (0..n)
                .map(|i| (0..n).map(|j| pick(&self[(i, j)])).collect())
                .collect()
        };
        let mut st = serializer.serialize_struct("CMatrix", 3)?;
        st.serialize_field("n", &n)?;
        st.serialize_field("re", &part(|z| z.re))?;
        st.serialize_field("im", &part(|z| z.im))?;
        st.end()
    }
}

impl<'de, F: Real + Deserialize<'de>> Deserialize<'de> for CMatrix<F> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct MatVisitor<F>(std::marker::PhantomData<F>);

        impl<'de, F: Real + Deserialize<'de>> Visitor<'de> for MatVisitor<F> {
            type Value = CMatrix<F>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a matrix object with fields n, re, im")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<CMatrix<F>, A::Error> {
                let mut n: Option<usize> = None;
                let mut re: Option<Vec<Vec<F>>> = None;
                let mut im: Option<Vec<Vec<F>>> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "n" => n = Some(map.next_value()?),
                        "re" => re = Some(map.next_value()?),
                        "im" => im = Some(map.next_value()?),
                        other => {
                            return Err(de::Error::unknown_field(other, &["n", "re", "im"]));
                        }
                    }
                }
                let n = n.ok_or_else(|| de::Error::missing_field("n"))?;
                let re = re.ok_or_else(|| de::Error::missing_field("re"))?;
                // A missing imaginary block means a real matrix.
                let im = im.unwrap_or_else(|| vec![vec![F::zero(); n]; n]);
                if n == 0 {
                    return Err(de::Error::custom("matrix dimension must be positive"));
                }
                let shape_ok =
                    |p: &Vec<Vec<F>>| p.len() == n && p.iter().all(|row| row.len() == n);
                if !shape_ok(&re) || !shape_ok(&im) {
                    return Err(de::Error::custom(format!(
                        "re/im blocks must both be {n}×{n}"
                    )));
                }
                let m = CMatrix::from_fn(n, |i, j| Complex::new(re[i][j], im[i][j]));
                if !m.is_finite() {
                    return Err(de::Error::custom("matrix entries must be finite"));
                }
                Ok(m)
            }
        }

        deserializer.deserialize_struct("CMatrix", &["n", "re", "im"], MatVisitor(std::marker::PhantomData))
    }
}
