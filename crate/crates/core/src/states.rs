//! Density matrices, Bloch vectors, spectra and random states.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::eigen::hermitian_eigen;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::tol;

/// A validated quantum state: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: CMatrix,
}

/// Real Bloch coordinates of a qubit state, rho = (I + r . sigma) / 2.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BlochVector {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

/// Real eigenvalues sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
}

impl HermitianSpectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(f64::NAN)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(f64::NAN)
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// Largest absolute difference to another spectrum of the same length.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.eigenvalues.len(), other.eigenvalues.len());
        self.eigenvalues
            .iter()
            .zip(&other.eigenvalues)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Certifies `m` as a density matrix.
///
/// Small Hermiticity defects (at most 1e-10) are symmetrized away as
/// (m + m^dag)/2; anything larger is rejected. Checks run in the order
/// dimension, Hermiticity, trace, positivity.
pub fn validate(m: CMatrix) -> Result<DensityMatrix> {
    let d = m.dim();
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let deviation = m.hermitian_deviation();
    if deviation > tol::HERMITIAN {
        return Err(Error::NotHermitian { deviation });
    }
    let mut m = m.hermitian_part();
    for j in 0..d {
        m[(j, j)].im = 0.0;
    }
    let trace = m.trace().re;
    if (trace - 1.0).abs() > tol::TRACE {
        return Err(Error::TraceNotOne {
            trace,
            deviation: (trace - 1.0).abs(),
        });
    }
    let min_eigenvalue = hermitian_eigen(&m).values[0];
    if min_eigenvalue < tol::PSD {
        return Err(Error::NotPsd { min_eigenvalue });
    }
    Ok(DensityMatrix { m })
}

/// Validates a matrix given as rows.
pub fn validate_rows(rows: &[Vec<Complex64>]) -> Result<DensityMatrix> {
    validate(CMatrix::from_rows(rows)?)
}

impl DensityMatrix {
    /// Maximally mixed state I/d.
    pub fn maximally_mixed(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        Ok(Self {
            m: CMatrix::identity(d).scale(1.0 / d as f64),
        })
    }

    /// Pure state |psi><psi| for a (not necessarily normalized) vector.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm2 <= 0.0 {
            return Err(Error::InvalidArgument("zero state vector"));
        }
        validate(CMatrix::from_fn(psi.len(), |j, k| psi[j] * psi[k].conj() / norm2))
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        self.m[(j, k)]
    }

    /// Tr(rho^2)
    pub fn purity(&self) -> f64 {
        self.m.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_real(&self, tolerance: f64) -> bool {
        self.m.max_imag() <= tolerance
    }

    /// rho^T, which for a Hermitian matrix is its entrywise conjugate.
    pub fn transpose(&self) -> Self {
        Self { m: self.m.transpose() }
    }
}

impl BlochVector {
    pub const fn new(r1: f64, r2: f64, r3: f64) -> Self {
        Self { r1, r2, r3 }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.r1 * self.r1 + self.r2 * self.r2 + self.r3 * self.r3
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }
}

/// rho = (I + r . sigma)/2.
pub fn from_bloch(r: BlochVector) -> Result<DensityMatrix> {
    let norm = r.norm();
    if r.norm_sqr().is_nan() || r.norm_sqr() > 1.0 + tol::BLOCH {
        return Err(Error::BlochNormExceeded { norm });
    }
    let mut m = CMatrix::zeros(2);
    m[(0, 0)] = Complex64::new((1.0 + r.r3) / 2.0, 0.0);
    m[(1, 1)] = Complex64::new((1.0 - r.r3) / 2.0, 0.0);
    m[(0, 1)] = Complex64::new(r.r1 / 2.0, -r.r2 / 2.0);
    m[(1, 0)] = Complex64::new(r.r1 / 2.0, r.r2 / 2.0);
    // eigenvalues are (1 -+ |r|)/2, nonnegative inside the ball
    Ok(DensityMatrix { m })
}

/// r_k = Tr(rho sigma_k).
pub fn to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            actual: rho.dim(),
        });
    }
    let off = rho.entry(1, 0);
    Ok(BlochVector {
        r1: 2.0 * off.re,
        r2: 2.0 * off.im,
        r3: rho.entry(0, 0).re - rho.entry(1, 1).re,
    })
}

pub fn spectrum(rho: &DensityMatrix) -> HermitianSpectrum {
    hermitian_spectrum(rho.matrix())
}

/// Eigenvalues of the Hermitian part of an arbitrary square matrix.
pub fn hermitian_spectrum(m: &CMatrix) -> HermitianSpectrum {
    HermitianSpectrum {
        eigenvalues: hermitian_eigen(m).values,
    }
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(a: &CMatrix) -> Result<f64> {
    let deviation = a.hermitian_deviation();
    if deviation > tol::HERMITIAN {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(hermitian_eigen(a).values.iter().map(|l| l.abs()).sum())
}

/// Re(rho) = (rho + rho^T)/2, again a state.
pub fn real_part(rho: &DensityMatrix) -> DensityMatrix {
    DensityMatrix { m: rho.m.re() }
}

/// Hilbert-Schmidt random state G G^dag / Tr(G G^dag) with G complex Ginibre.
pub fn random_state(d: usize, seed: u64) -> Result<DensityMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_state_with(d, &mut rng)
}

/// Same as [`random_state`] but drawing from a caller-supplied generator.
pub fn random_state_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<DensityMatrix> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let g = ginibre(d, rng);
    let w = g.mul_adjoint(&g);
    let tr = w.trace().re;
    validate(w.scale(1.0 / tr))
}

pub(crate) fn ginibre<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    })
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
pub(crate) fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    loop {
        let g = ginibre(d, rng);
        let mut data: Vec<Complex64> = g.as_slice().to_vec();
        // Gram-Schmidt leaves R with a positive diagonal, which is what makes Q Haar
        if crate::matrix::orthonormalize_columns(&mut data, d, d) {
            return CMatrix::from_fn(d, |j, k| data[j * d + k]);
        }
    }
}
