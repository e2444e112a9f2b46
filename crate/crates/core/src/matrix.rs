//! Dense square complex matrices, row-major.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// |z| through libm, independent of which float backend num-complex uses.
pub(crate) fn modulus(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}

/// e^{i t}
pub(crate) fn unit_phase(t: f64) -> Complex64 {
    Complex64::new(libm::cos(t), libm::sin(t))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for j in 0..dim {
            m[(j, j)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for j in 0..dim {
            for k in 0..dim {
                data.push(f(j, k));
            }
        }
        Self { dim, data }
    }

    /// Real diagonal matrix.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (j, &v) in diag.iter().enumerate() {
            m[(j, j)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Builds a matrix from rows; fails unless every row has as many entries as there are rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    /// Real matrix from row-major data of length `dim * dim`.
    pub fn from_real(dim: usize, data: &[f64]) -> Self {
        assert_eq!(data.len(), dim * dim);
        Self {
            dim,
            data: data.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.data.chunks(self.dim.max(1))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |j, k| self[(k, j)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |j, k| self[(k, j)])
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Entrywise real part.
    pub fn re(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| Complex64::new(z.re, 0.0)).collect(),
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|j| self[(j, j)]).sum()
    }

    /// max_jk |m_jk - conj(m_kj)|
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0_f64;
        for j in 0..self.dim {
            for k in j..self.dim {
                worst = worst.max(modulus(self[(j, k)] - self[(k, j)].conj()));
            }
        }
        worst
    }

    /// (m + m^dag) / 2
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |j, k| (self[(j, k)] + self[(k, j)].conj()) * 0.5)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| modulus(a - b))
            .fold(0.0, f64::max)
    }

    /// Largest |Im m_jk| over all entries.
    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// a * b^dag without forming the adjoint.
    pub fn mul_adjoint(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        Self::from_fn(n, |j, k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..n {
                acc += self[(j, l)] * rhs[(k, l)].conj();
            }
            acc
        })
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (j, k): (usize, usize)) -> &Complex64 {
        &self.data[j * self.dim + k]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (j, k): (usize, usize)) -> &mut Complex64 {
        &mut self.data[j * self.dim + k]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for j in 0..n {
            for l in 0..n {
                let a = self[(j, l)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for k in 0..n {
                    out.data[j * n + k] += a * rhs[(l, k)];
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Orthonormalizes the columns of a `rows x cols` complex matrix (row-major) in place by
/// modified Gram-Schmidt. Returns false if the columns are numerically dependent.
pub(crate) fn orthonormalize_columns(data: &mut [Complex64], rows: usize, cols: usize) -> bool {
    for c in 0..cols {
        for prev in 0..c {
            let mut proj = Complex64::new(0.0, 0.0);
            for r in 0..rows {
                proj += data[r * cols + prev].conj() * data[r * cols + c];
            }
            for r in 0..rows {
                let v = data[r * cols + prev];
                data[r * cols + c] -= proj * v;
            }
        }
        let norm = libm::sqrt((0..rows).map(|r| data[r * cols + c].norm_sqr()).sum());
        if norm < 1e-300 {
            return false;
        }
        for r in 0..rows {
            data[r * cols + c] /= norm;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn from_rows_rejects_ragged() {
        let rows = vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0)]];
        assert_eq!(
            CMatrix::from_rows(&rows),
            Err(Error::NotSquare { rows: 2, cols: 1 })
        );
    }

    #[test]
    fn product_and_adjoint() {
        let a = CMatrix::from_rows(&[vec![c(1.0, 1.0), c(2.0, 0.0)], vec![c(0.0, -1.0), c(3.0, 0.5)]])
            .unwrap();
        let b = a.adjoint();
        let ab = &a * &b;
        assert!(ab.hermitian_deviation() < 1e-15);
        assert!(ab.max_abs_diff(&a.mul_adjoint(&a)) < 1e-15);
        assert!((ab.trace().re - a.norm() * a.norm()).abs() < 1e-12);
    }

    #[test]
    fn gram_schmidt_gives_orthonormal_columns() {
        let mut data = vec![c(1.0, 0.0), c(1.0, 1.0), c(0.0, 2.0), c(1.0, -1.0), c(3.0, 0.0), c(0.5, 0.5)];
        assert!(orthonormalize_columns(&mut data, 3, 2));
        let dot = |a: usize, b: usize| -> Complex64 { (0..3).map(|r| data[r * 2 + a].conj() * data[r * 2 + b]).sum() };
        assert!((dot(0, 0).re - 1.0).abs() < 1e-14);
        assert!((dot(1, 1).re - 1.0).abs() < 1e-14);
        assert!(dot(0, 1).norm() < 1e-14);
    }
}
