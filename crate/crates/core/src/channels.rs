//! Kraus channels and the evolution of the qubit trade-off functional
//! F = M_l1^2 + S_l under bit flip, phase damping, depolarizing and amplitude
//! damping noise.
//!
//! Channels are always applied through their Kraus lists. The closed forms in
//! [`f_out_closed`] are a separate path; the two are compared in tests.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};
use core::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::states::{from_bloch, validate, BlochVector, DensityMatrix};
use crate::tol;
use crate::tradeoffs::f_l1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ChannelKind {
    BitFlip,
    PhaseDamping,
    Depolarizing,
    AmplitudeDamping,
    Custom,
}

impl ChannelKind {
    pub const NAMED: [ChannelKind; 4] = [
        ChannelKind::BitFlip,
        ChannelKind::PhaseDamping,
        ChannelKind::Depolarizing,
        ChannelKind::AmplitudeDamping,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            ChannelKind::BitFlip => "bf",
            ChannelKind::PhaseDamping => "pd",
            ChannelKind::Depolarizing => "dp",
            ChannelKind::AmplitudeDamping => "ad",
            ChannelKind::Custom => "custom",
        }
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bf" | "bit-flip" => Ok(ChannelKind::BitFlip),
            "pd" | "phase-damping" => Ok(ChannelKind::PhaseDamping),
            "dp" | "depolarizing" => Ok(ChannelKind::Depolarizing),
            "ad" | "amplitude-damping" => Ok(ChannelKind::AmplitudeDamping),
            _ => Err(Error::UnknownKind),
        }
    }
}

/// A completely positive trace-preserving map given by its Kraus operators.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    dim: usize,
    kraus: Vec<CMatrix>,
    label: ChannelKind,
    p: Option<f64>,
}

impl KrausChannel {
    /// Custom channel; checks shapes and completeness.
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        Self::labelled(kraus, ChannelKind::Custom, None)
    }

    fn labelled(kraus: Vec<CMatrix>, label: ChannelKind, p: Option<f64>) -> Result<Self> {
        let dim = kraus.first().map(CMatrix::dim).ok_or(Error::InvalidArgument("no Kraus operators"))?;
        if let Some(bad) = kraus.iter().find(|k| k.dim() != dim) {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: bad.dim(),
            });
        }
        let ch = Self { dim, kraus, label, p };
        let residual = ch.completeness_residual();
        if residual > tol::COMPLETENESS {
            return Err(Error::IncompleteKraus { residual });
        }
        Ok(ch)
    }

    pub fn identity(d: usize) -> Self {
        Self {
            dim: d,
            kraus: vec![CMatrix::identity(d)],
            label: ChannelKind::Custom,
            p: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn label(&self) -> ChannelKind {
        self.label
    }

    pub fn p(&self) -> Option<f64> {
        self.p
    }

    /// max |sum K^dag K - I|
    pub fn completeness_residual(&self) -> f64 {
        let mut sum = CMatrix::zeros(self.dim);
        for k in &self.kraus {
            let kd = k.adjoint();
            sum = &sum + &(&kd * k);
        }
        sum.max_abs_diff(&CMatrix::identity(self.dim))
    }

    /// Whether every Kraus matrix is real, i.e. the channel is a free operation.
    pub fn is_real(&self) -> bool {
        self.kraus.iter().all(|k| k.max_imag() <= tol::REAL_ENTRY)
    }
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidP(p))
    }
}

fn named(kraus: Vec<CMatrix>, label: ChannelKind, p: f64) -> Result<KrausChannel> {
    // operators with a zero prefactor carry no weight
    let kraus: Vec<CMatrix> = kraus.into_iter().filter(|k| k.norm() > 0.0).collect();
    KrausChannel::labelled(kraus, label, Some(p))
}

fn pauli_x() -> CMatrix {
    CMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0])
}

fn pauli_z() -> CMatrix {
    CMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0])
}

/// -i sigma_2 = [[0, -1], [1, 0]]. Same action as sigma_2 under K rho K^dag.
fn real_pauli_y() -> CMatrix {
    CMatrix::from_real(2, &[0.0, -1.0, 1.0, 0.0])
}

/// K0 = sqrt(p) I, K1 = sqrt(1-p) sigma_1.
pub fn bit_flip(p: f64) -> Result<KrausChannel> {
    check_p(p)?;
    named(
        vec![CMatrix::identity(2).scale(libm::sqrt(p)), pauli_x().scale(libm::sqrt(1.0 - p))],
        ChannelKind::BitFlip,
        p,
    )
}

/// K0 = sqrt(p) I, K1 = sqrt(1-p)|0><0|, K2 = sqrt(1-p)|1><1|.
pub fn phase_damping(p: f64) -> Result<KrausChannel> {
    check_p(p)?;
    let q = libm::sqrt(1.0 - p);
    named(
        vec![
            CMatrix::identity(2).scale(libm::sqrt(p)),
            CMatrix::from_real(2, &[q, 0.0, 0.0, 0.0]),
            CMatrix::from_real(2, &[0.0, 0.0, 0.0, q]),
        ],
        ChannelKind::PhaseDamping,
        p,
    )
}

/// rho -> (p/2) I + (1-p) rho, as the real Kraus set
/// {sqrt(1 - 3p/4) I, sqrt(p)/2 sigma_1, sqrt(p)/2 (-i sigma_2), sqrt(p)/2 sigma_3}.
pub fn depolarizing(p: f64) -> Result<KrausChannel> {
    check_p(p)?;
    let w = libm::sqrt(p) / 2.0;
    named(
        vec![
            CMatrix::identity(2).scale(libm::sqrt(1.0 - 0.75 * p)),
            pauli_x().scale(w),
            real_pauli_y().scale(w),
            pauli_z().scale(w),
        ],
        ChannelKind::Depolarizing,
        p,
    )
}

/// The depolarizing map in its affine form (p/2) I + (1-p) rho, on qubits.
pub fn depolarize_affine(p: f64, rho: &DensityMatrix) -> Result<DensityMatrix> {
    check_p(p)?;
    if rho.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            actual: rho.dim(),
        });
    }
    let out = &CMatrix::identity(2).scale(p / 2.0) + &rho.matrix().scale(1.0 - p);
    validate(out)
}

/// K0 = |0><0| + sqrt(1-p)|1><1|, K1 = sqrt(p)|0><1|.
pub fn amplitude_damping(p: f64) -> Result<KrausChannel> {
    check_p(p)?;
    named(
        vec![
            CMatrix::from_real(2, &[1.0, 0.0, 0.0, libm::sqrt(1.0 - p)]),
            CMatrix::from_real(2, &[0.0, libm::sqrt(p), 0.0, 0.0]),
        ],
        ChannelKind::AmplitudeDamping,
        p,
    )
}

/// Builds one of the four named qubit channels.
pub fn named_channel(kind: ChannelKind, p: f64) -> Result<KrausChannel> {
    match kind {
        ChannelKind::BitFlip => bit_flip(p),
        ChannelKind::PhaseDamping => phase_damping(p),
        ChannelKind::Depolarizing => depolarizing(p),
        ChannelKind::AmplitudeDamping => amplitude_damping(p),
        ChannelKind::Custom => Err(Error::UnknownKind),
    }
}

/// sum_j K_j rho K_j^dag
pub fn apply(ch: &KrausChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if ch.dim != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: ch.dim,
            right: rho.dim(),
        });
    }
    let residual = ch.completeness_residual();
    if residual > tol::COMPLETENESS {
        return Err(Error::IncompleteKraus { residual });
    }
    let mut out = CMatrix::zeros(ch.dim);
    for k in &ch.kraus {
        let kr = k * rho.matrix();
        out = &out + &kr.mul_adjoint(k);
    }
    validate(out)
}

/// Closed form of F(channel(rho)) for the qubit with Bloch vector `r`.
pub fn f_out_closed(kind: ChannelKind, p: f64, r: BlochVector) -> Result<f64> {
    check_p(p)?;
    if r.norm_sqr().is_nan() || r.norm_sqr() > 1.0 + tol::BLOCH {
        return Err(Error::BlochNormExceeded { norm: r.norm() });
    }
    let BlochVector { r1, r3, .. } = r;
    Ok(match kind {
        ChannelKind::BitFlip => {
            let a = 2.0 * p - 1.0;
            1.0 - r1 * r1 - a * a * r3 * r3
        }
        ChannelKind::PhaseDamping => 1.0 - p * p * r1 * r1 - r3 * r3,
        ChannelKind::Depolarizing => {
            let q = (1.0 - p) * (1.0 - p);
            1.0 - q * r1 * r1 - q * r3 * r3
        }
        ChannelKind::AmplitudeDamping => {
            let z = p + (1.0 - p) * r3;
            1.0 - (1.0 - p) * r1 * r1 - z * z
        }
        ChannelKind::Custom => return Err(Error::UnknownKind),
    })
}

/// r(theta) = (sin(theta)/sqrt 2, sin(theta)/sqrt 2, cos(theta)).
pub fn sweep_bloch(theta: f64) -> BlochVector {
    let s = libm::sin(theta) * FRAC_1_SQRT_2;
    BlochVector::new(s, s, libm::cos(theta))
}

/// One grid point of a channel sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepRow {
    pub p: f64,
    pub theta: f64,
    pub f_in: f64,
    pub f_out_closed: f64,
    pub f_out_numeric: f64,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str = "p,theta,f_in,f_out_closed,f_out_numeric";
}

/// `n` evenly spaced points covering [lo, hi], endpoints included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|k| if k == n - 1 { hi } else { lo + (hi - lo) * k as f64 / (n - 1) as f64 })
            .collect(),
    }
}

/// Amplitude-damping sweep along r(theta), p-major order. `f_in = sin^2(theta)/2`
/// and `f_out_closed = (1-p)[(p - 1/2) cos^2 - 2p cos + p + 1/2]`.
pub fn sweep_ad(p_grid: &[f64], theta_grid: &[f64]) -> Result<Vec<SweepRow>> {
    check_grids(p_grid, theta_grid)?;
    let mut rows = Vec::with_capacity(p_grid.len() * theta_grid.len());
    for &p in p_grid {
        let ch = amplitude_damping(p)?;
        for &theta in theta_grid {
            let c = libm::cos(theta);
            let s = libm::sin(theta);
            let f_in = 0.5 * s * s;
            let f_out_closed = (1.0 - p) * ((p - 0.5) * c * c - 2.0 * p * c + p + 0.5);
            let f_out_numeric = f_l1(&apply(&ch, &from_bloch(sweep_bloch(theta))?)?);
            rows.push(SweepRow {
                p,
                theta,
                f_in,
                f_out_closed,
                f_out_numeric,
            });
        }
    }
    Ok(rows)
}

/// Sweep along r(theta) for any named kind, using the general closed forms.
pub fn sweep(kind: ChannelKind, p_grid: &[f64], theta_grid: &[f64]) -> Result<Vec<SweepRow>> {
    if kind == ChannelKind::AmplitudeDamping {
        return sweep_ad(p_grid, theta_grid);
    }
    check_grids(p_grid, theta_grid)?;
    let mut rows = Vec::with_capacity(p_grid.len() * theta_grid.len());
    for &p in p_grid {
        let ch = named_channel(kind, p)?;
        for &theta in theta_grid {
            let r = sweep_bloch(theta);
            let rho = from_bloch(r)?;
            rows.push(SweepRow {
                p,
                theta,
                f_in: f_l1(&rho),
                f_out_closed: f_out_closed(kind, p, r)?,
                f_out_numeric: f_l1(&apply(&ch, &rho)?),
            });
        }
    }
    Ok(rows)
}

fn check_grids(p_grid: &[f64], theta_grid: &[f64]) -> Result<()> {
    for &p in p_grid {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::GridOutOfRange { value: p, lo: 0.0, hi: 1.0 });
        }
    }
    for &t in theta_grid {
        if !(0.0..=PI).contains(&t) {
            return Err(Error::GridOutOfRange { value: t, lo: 0.0, hi: PI });
        }
    }
    Ok(())
}

/// Random real channel: the column-orthonormalized stack of `n_kraus` real
/// Gaussian d x d matrices, cut back into blocks.
pub fn random_real_channel(d: usize, n_kraus: usize, seed: u64) -> Result<KrausChannel> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if n_kraus == 0 {
        return Err(Error::InvalidArgument("n_kraus must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = n_kraus * d;
    loop {
        let mut stack: Vec<Complex64> = (0..rows * d)
            .map(|_| Complex64::new(StandardNormal.sample(&mut rng), 0.0))
            .collect();
        if !crate::matrix::orthonormalize_columns(&mut stack, rows, d) {
            continue;
        }
        let kraus = (0..n_kraus)
            .map(|j| CMatrix::from_fn(d, |r, c| Complex64::new(stack[(j * d + r) * d + c].re, 0.0)))
            .collect();
        return KrausChannel::new(kraus);
    }
}
