//! Maximally imaginary mixed states and related reference states.
//!
//! The d-dimensional family has diagonal 1/d and every strictly-upper entry
//! equal to -iy (the `Lower` variant) or +iy (`Upper`, its transpose), with
//! |y| = sqrt(1 - s)/d for mixedness s. Conjugation by a diagonal sign matrix
//! O = diag(+-1) maps the family to itself without changing any measure.
//! The matrix is positive semidefinite exactly when s >= [`threshold`].

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::states::{validate, DensityMatrix, HermitianSpectrum};
use crate::tol;

/// Which of the two transposed forms to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Variant {
    /// -iy strictly above the diagonal.
    Lower,
    /// +iy strictly above the diagonal.
    Upper,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lower" | "1" => Ok(Variant::Lower),
            "upper" | "2" => Ok(Variant::Upper),
            _ => Err(Error::InvalidArgument("variant must be `lower` or `upper`")),
        }
    }
}

/// Diagonal real orthogonal matrix O = diag(signs), first sign fixed to +1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignMask {
    signs: Vec<i8>,
}

impl SignMask {
    pub fn identity(d: usize) -> Self {
        Self { signs: alloc::vec![1; d] }
    }

    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::InvalidMask("empty mask"));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidMask("entries must be +1 or -1"));
        }
        if signs[0] != 1 {
            return Err(Error::InvalidMask("first entry must be +1"));
        }
        Ok(Self { signs })
    }

    /// Uniformly random mask of length `d` (first entry +1).
    pub fn random<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Self {
        let signs = (0..d)
            .map(|j| if j == 0 || rng.random::<bool>() { 1 } else { -1 })
            .collect();
        Self { signs }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    fn sign(&self, j: usize) -> f64 {
        f64::from(self.signs[j])
    }
}

/// Parses strings such as `+--+`.
impl FromStr for SignMask {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(Error::InvalidMask("only `+` and `-` are allowed")),
            })
            .collect::<Result<Vec<i8>>>()?;
        Self::new(signs)
    }
}

impl fmt::Display for SignMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.signs {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// Parameters of a d-dimensional MIMS. The off-diagonal magnitude is derived
/// from the mixedness, never supplied.
#[derive(Debug, Clone, PartialEq)]
pub struct MimsSpec {
    dim: usize,
    mixedness: f64,
    variant: Variant,
    mask: SignMask,
}

impl MimsSpec {
    /// Checks the dimension, the mixedness range, the mask length and feasibility.
    pub fn new(dim: usize, mixedness: f64, variant: Variant, mask: SignMask) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        check_mixedness(mixedness)?;
        if mask.len() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: mask.len(),
            });
        }
        check_threshold(dim, mixedness)?;
        Ok(Self {
            dim,
            mixedness,
            variant,
            mask,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mixedness(&self) -> f64 {
        self.mixedness
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn mask(&self) -> &SignMask {
        &self.mask
    }

    /// |y| = sqrt(1 - s)/d
    pub fn y_mag(&self) -> f64 {
        y_magnitude(self.dim, self.mixedness)
    }
}

fn check_mixedness(s: f64) -> Result<()> {
    if (0.0..1.0).contains(&s) {
        Ok(())
    } else {
        Err(Error::InvalidMixedness(s))
    }
}

fn check_threshold(dim: usize, s: f64) -> Result<()> {
    let threshold = threshold(dim);
    if s < threshold - tol::THRESHOLD {
        return Err(Error::BelowThreshold {
            dim,
            mixedness: s,
            threshold,
        });
    }
    Ok(())
}

/// Off-diagonal magnitude sqrt(1 - s)/d of the MIMS with mixedness s.
pub fn y_magnitude(d: usize, s: f64) -> f64 {
    libm::sqrt(1.0 - s) / d as f64
}

/// Smallest mixedness at which the d-dimensional family is a state:
/// 2 cos(pi/d) / (1 + cos(pi/d)), equivalently 1 - tan^2(pi/(2d)).
pub fn threshold(d: usize) -> f64 {
    let c = libm::cos(PI / d as f64);
    2.0 * c / (1.0 + c)
}

/// The raw (unvalidated) family matrix: diagonal 1/d, -iy above and +iy below
/// the diagonal. A negative `y` gives the `Upper` form with |y|.
pub fn family_matrix(d: usize, y: f64) -> CMatrix {
    let diag = 1.0 / d as f64;
    CMatrix::from_fn(d, |j, k| match j.cmp(&k) {
        core::cmp::Ordering::Equal => Complex64::new(diag, 0.0),
        core::cmp::Ordering::Less => Complex64::new(0.0, -y),
        core::cmp::Ordering::Greater => Complex64::new(0.0, y),
    })
}

fn signed_y(variant: Variant, y_mag: f64) -> f64 {
    match variant {
        Variant::Lower => y_mag,
        Variant::Upper => -y_mag,
    }
}

/// O m O^T for O = diag(mask), on a raw matrix.
fn conjugate_raw(m: &CMatrix, mask: &SignMask) -> CMatrix {
    CMatrix::from_fn(m.dim(), |j, k| m[(j, k)] * (mask.sign(j) * mask.sign(k)))
}

/// Qubit MIMS O rho_M O^T with rho_M = p|+><+| + (1-p)/2 I, p = sqrt(1 - s).
pub fn qubit_mims(s: f64, variant: Variant, mask: &SignMask) -> Result<DensityMatrix> {
    let spec = MimsSpec::new(2, s, variant, mask.clone())?;
    ddim_mims(&spec)
}

/// The k-th (1..=8) qutrit MIMS, in the order
/// (lower, id), (upper, id), (lower, O1), (lower, O2), (lower, O3),
/// (upper, O1), (upper, O2), (upper, O3) with O1 = diag(1,1,-1),
/// O2 = diag(1,-1,1), O3 = diag(1,-1,-1).
pub fn qutrit_mims(s: f64, k: usize) -> Result<DensityMatrix> {
    let (variant, mask) = qutrit_pattern(k)?;
    ddim_mims(&MimsSpec::new(3, s, variant, mask)?)
}

/// Variant and mask generating the k-th qutrit MIMS.
pub fn qutrit_pattern(k: usize) -> Result<(Variant, SignMask)> {
    let o = |s: [i8; 3]| SignMask { signs: s.to_vec() };
    let id = o([1, 1, 1]);
    let o1 = o([1, 1, -1]);
    let o2 = o([1, -1, 1]);
    let o3 = o([1, -1, -1]);
    Ok(match k {
        1 => (Variant::Lower, id),
        2 => (Variant::Upper, id),
        3 => (Variant::Lower, o1),
        4 => (Variant::Lower, o2),
        5 => (Variant::Lower, o3),
        6 => (Variant::Upper, o1),
        7 => (Variant::Upper, o2),
        8 => (Variant::Upper, o3),
        _ => return Err(Error::InvalidVariantIndex(k)),
    })
}

/// The d-dimensional MIMS described by `spec`.
pub fn ddim_mims(spec: &MimsSpec) -> Result<DensityMatrix> {
    let raw = family_matrix(spec.dim, signed_y(spec.variant, spec.y_mag()));
    validate(conjugate_raw(&raw, &spec.mask))
}

/// Closed-form eigenvalues 1/d - y cot(theta_k / 2), theta_k = (2k-1) pi / d,
/// of [`family_matrix`]`(d, y)`, sorted ascending.
pub fn mims_spectrum_closed_form(d: usize, y: f64) -> Result<HermitianSpectrum> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let n = d as f64;
    let mut eigenvalues: Vec<f64> = (1..=d)
        .map(|k| {
            let half = (2.0 * k as f64 - 1.0) * PI / (2.0 * n);
            1.0 / n - y * libm::cos(half) / libm::sin(half)
        })
        .collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(HermitianSpectrum { eigenvalues })
}

/// Maximally coherent mixed state p|phi_d><phi_d| + (1-p)/d I.
pub fn mcms(d: usize, p: f64) -> Result<DensityMatrix> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidP(p));
    }
    let n = d as f64;
    validate(CMatrix::from_fn(d, |j, k| {
        Complex64::new(if j == k { 1.0 / n } else { p / n }, 0.0)
    }))
}

/// p|+><+| + (1-p)/d I with |+> = (|0> + i|1>)/sqrt(2) embedded in dimension d.
pub fn noisy_plus(d: usize, p: f64) -> Result<DensityMatrix> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidP(p));
    }
    let mut m = CMatrix::identity(d).scale((1.0 - p) / d as f64);
    m[(0, 0)] += p / 2.0;
    m[(1, 1)] += p / 2.0;
    m[(0, 1)] = Complex64::new(0.0, -p / 2.0);
    m[(1, 0)] = Complex64::new(0.0, p / 2.0);
    validate(m)
}

/// O rho O^T for the diagonal sign matrix O.
pub fn conjugate_by_sign_mask(rho: &DensityMatrix, mask: &SignMask) -> Result<DensityMatrix> {
    if mask.len() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: mask.len(),
        });
    }
    validate(conjugate_raw(rho.matrix(), mask))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{m_l1, s_linear};
    use crate::states::{real_part, spectrum};
    use alloc::vec;
    use alloc::string::ToString;

    fn i(y: f64) -> Complex64 {
        Complex64::new(0.0, y)
    }

    #[test]
    fn qubit_mims_examples() {
        let id = SignMask::identity(2);
        let rho = qubit_mims(0.0, Variant::Lower, &id).unwrap();
        let plus = DensityMatrix::pure(&[1.0.into(), i(1.0)]).unwrap();
        assert!(rho.matrix().max_abs_diff(plus.matrix()) < 1e-15);

        let rho = qubit_mims(0.75, Variant::Lower, &id).unwrap();
        assert!((m_l1(&rho) - 0.5).abs() < 1e-15);
        assert!((s_linear(&rho) - 0.75).abs() < 1e-15);

        let upper = qubit_mims(0.0, Variant::Upper, &id).unwrap();
        assert_eq!(upper, qubit_mims(0.0, Variant::Lower, &id).unwrap().transpose());

        assert_eq!(qubit_mims(1.0, Variant::Lower, &id), Err(Error::InvalidMixedness(1.0)));
        assert_eq!(qubit_mims(-0.1, Variant::Lower, &id), Err(Error::InvalidMixedness(-0.1)));
    }

    #[test]
    fn qutrit_at_threshold_has_spectrum_zero_third_two_thirds() {
        let rho = qutrit_mims(2.0 / 3.0, 1).unwrap();
        let s = spectrum(&rho);
        assert!(s.eigenvalues[0].abs() < 1e-15);
        assert!((s.eigenvalues[1] - 1.0 / 3.0).abs() < 1e-15);
        assert!((s.eigenvalues[2] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn qutrit_below_threshold_is_rejected() {
        assert!(matches!(qutrit_mims(2.0 / 3.0 - 1e-6, 1), Err(Error::BelowThreshold { dim: 3, .. })));
        assert_eq!(qutrit_mims(0.8, 9), Err(Error::InvalidVariantIndex(9)));
        assert_eq!(qutrit_mims(0.8, 0), Err(Error::InvalidVariantIndex(0)));
    }

    #[test]
    fn qutrit_tends_to_maximally_mixed() {
        let rho = qutrit_mims(1.0 - 1e-12, 4).unwrap();
        assert!(rho.matrix().max_abs_diff(DensityMatrix::maximally_mixed(3).unwrap().matrix()) < 1e-6);
    }

    /// The eight matrices as printed, upper-triangle signs of iy at (0,1), (0,2), (1,2).
    fn printed_qutrit(k: usize, y: f64) -> CMatrix {
        let signs: [[f64; 3]; 8] = [
            [-1.0, -1.0, -1.0],
            [1.0, 1.0, 1.0],
            [-1.0, 1.0, 1.0],
            [1.0, -1.0, 1.0],
            [1.0, 1.0, -1.0],
            [1.0, -1.0, -1.0],
            [-1.0, 1.0, -1.0],
            [-1.0, -1.0, 1.0],
        ];
        let s = signs[k - 1];
        let third = Complex64::new(1.0 / 3.0, 0.0);
        CMatrix::from_rows(&[
            vec![third, i(s[0] * y), i(s[1] * y)],
            vec![i(-s[0] * y), third, i(s[2] * y)],
            vec![i(-s[1] * y), i(-s[2] * y), third],
        ])
        .unwrap()
    }

    #[test]
    fn qutrit_variants_match_printed_matrices() {
        for &s in &[2.0 / 3.0, 0.7, 0.9, 0.99] {
            let y = libm::sqrt(1.0 - s) / 3.0;
            for k in 1..=8 {
                let rho = qutrit_mims(s, k).unwrap();
                assert!(rho.matrix().max_abs_diff(&printed_qutrit(k, y)) < 1e-16, "k = {k}");
                let sp = spectrum(&rho);
                let root3 = libm::sqrt(3.0);
                assert!((sp.eigenvalues[0] - (1.0 / 3.0 - root3 * y)).abs() < 1e-14);
                assert!((sp.eigenvalues[1] - 1.0 / 3.0).abs() < 1e-14);
                assert!((sp.eigenvalues[2] - (1.0 / 3.0 + root3 * y)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn qutrit_variants_are_sign_conjugates() {
        let o1: SignMask = "++-".parse().unwrap();
        let o2: SignMask = "+-+".parse().unwrap();
        let o3: SignMask = "+--".parse().unwrap();
        let s = 0.85;
        let r1 = qutrit_mims(s, 1).unwrap();
        let r2 = qutrit_mims(s, 2).unwrap();
        assert_eq!(conjugate_by_sign_mask(&r1, &o1).unwrap(), qutrit_mims(s, 3).unwrap());
        assert_eq!(conjugate_by_sign_mask(&r1, &o2).unwrap(), qutrit_mims(s, 4).unwrap());
        assert_eq!(conjugate_by_sign_mask(&r1, &o3).unwrap(), qutrit_mims(s, 5).unwrap());
        assert_eq!(conjugate_by_sign_mask(&r2, &o1).unwrap(), qutrit_mims(s, 6).unwrap());
        assert_eq!(conjugate_by_sign_mask(&r2, &o2).unwrap(), qutrit_mims(s, 7).unwrap());
        assert_eq!(conjugate_by_sign_mask(&r2, &o3).unwrap(), qutrit_mims(s, 8).unwrap());
    }

    #[test]
    fn ddim_examples() {
        let spec = MimsSpec::new(3, 2.0 / 3.0, Variant::Lower, SignMask::identity(3)).unwrap();
        assert_eq!(ddim_mims(&spec).unwrap(), qutrit_mims(2.0 / 3.0, 1).unwrap());

        let spec = MimsSpec::new(4, threshold(4), Variant::Upper, "+-+-".parse().unwrap()).unwrap();
        assert!(spectrum(&ddim_mims(&spec).unwrap()).min().abs() < 1e-12);

        let spec = MimsSpec::new(5, 0.95, Variant::Lower, SignMask::identity(5)).unwrap();
        let expected = 20.0 * libm::sqrt(0.05) / 5.0;
        assert!((m_l1(&ddim_mims(&spec).unwrap()) - expected).abs() < 1e-14);
        assert!((spec.y_mag() - libm::sqrt(0.05) / 5.0).abs() < 1e-16);

        assert!(matches!(
            MimsSpec::new(5, 0.5, Variant::Lower, SignMask::identity(5)),
            Err(Error::BelowThreshold { dim: 5, .. })
        ));
        assert!(matches!(
            MimsSpec::new(5, 0.95, Variant::Lower, SignMask::identity(4)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn threshold_values() {
        assert!(threshold(2).abs() < 1e-15);
        assert!((threshold(3) - 2.0 / 3.0).abs() < 1e-15);
        let root2 = libm::sqrt(2.0);
        assert!((threshold(4) - 2.0 * root2 / (2.0 + root2)).abs() < 1e-15);
        assert!((threshold(4) - 0.828_427_124_746_19).abs() < 1e-13);
        for d in 2..40 {
            let t = libm::tan(PI / (2.0 * d as f64));
            assert!((threshold(d) - (1.0 - t * t)).abs() < 1e-14);
        }
    }

    #[test]
    fn closed_form_spectrum_examples() {
        let y = libm::sqrt(3.0) / 9.0;
        let s = mims_spectrum_closed_form(3, y).unwrap();
        assert!(s.max_abs_diff(&HermitianSpectrum { eigenvalues: vec![0.0, 1.0 / 3.0, 2.0 / 3.0] }) < 1e-15);

        let r2 = 0.42;
        let s = mims_spectrum_closed_form(2, r2 / 2.0).unwrap();
        assert!(s.max_abs_diff(&HermitianSpectrum { eigenvalues: vec![(1.0 - r2) / 2.0, (1.0 + r2) / 2.0] }) < 1e-15);

        for d in 2..10 {
            let s = mims_spectrum_closed_form(d, 0.0).unwrap();
            assert!(s.eigenvalues.iter().all(|&l| (l - 1.0 / d as f64).abs() < 1e-16));
        }
    }

    #[test]
    fn below_threshold_family_has_negative_eigenvalue() {
        for d in 3..12 {
            let s = threshold(d) - 0.01;
            let raw = family_matrix(d, y_magnitude(d, s));
            assert!(matches!(validate(raw), Err(Error::NotPsd { .. })), "d = {d}");
        }
    }

    #[test]
    fn mcms_examples() {
        let rho = mcms(2, 1.0).unwrap();
        assert!(rho.matrix().max_abs_diff(&CMatrix::from_real(2, &[0.5, 0.5, 0.5, 0.5])) < 1e-16);
        let rho = mcms(3, 0.5).unwrap();
        assert!((crate::measures::c_l1(&rho) - 1.0).abs() < 1e-15);
        assert_eq!(m_l1(&rho), 0.0);
        assert_eq!(mcms(3, 0.0), Err(Error::InvalidP(0.0)));
        assert_eq!(mcms(3, 1.5), Err(Error::InvalidP(1.5)));
    }

    #[test]
    fn qubit_mims_is_incoherent_unitary_image_of_mcms() {
        // rho_M = U rho_m U^dag with U = diag(1, i)
        let u = CMatrix::from_rows(&[vec![1.0.into(), 0.0.into()], vec![0.0.into(), i(1.0)]]).unwrap();
        for &s in &[0.0, 0.3, 0.75, 0.99] {
            let p = libm::sqrt(1.0 - s);
            let rho_m = mcms(2, p).unwrap();
            let image = &(&u * rho_m.matrix()) * &u.adjoint();
            let mims = qubit_mims(s, Variant::Lower, &SignMask::identity(2)).unwrap();
            assert!(image.max_abs_diff(mims.matrix()) < 1e-16);
        }
    }

    #[test]
    fn noisy_plus_rejects_bad_p() {
        assert_eq!(noisy_plus(3, 0.0), Err(Error::InvalidP(0.0)));
        assert!(noisy_plus(3, 1.0).is_ok());
    }

    #[test]
    fn conjugation_examples() {
        let rho = crate::states::random_state(4, 5).unwrap();
        assert_eq!(conjugate_by_sign_mask(&rho, &SignMask::identity(4)).unwrap(), rho);
        let qutrit = qutrit_mims(0.8, 1).unwrap();
        let masked = conjugate_by_sign_mask(&qutrit, &"+-+".parse().unwrap()).unwrap();
        assert_eq!(masked, qutrit_mims(0.8, 4).unwrap());
        assert_eq!(
            conjugate_by_sign_mask(&rho, &SignMask::identity(3)),
            Err(Error::DimensionMismatch { left: 4, right: 3 })
        );
    }

    #[test]
    fn mims_real_part_is_maximally_mixed() {
        for d in 2..9 {
            let spec = MimsSpec::new(d, (threshold(d) + 1.0) / 2.0, Variant::Upper, SignMask::identity(d)).unwrap();
            let re = real_part(&ddim_mims(&spec).unwrap());
            let target = DensityMatrix::maximally_mixed(d).unwrap();
            assert!(re.matrix().max_abs_diff(target.matrix()) <= 1e-14);
        }
    }

    #[test]
    fn mask_parsing() {
        assert_eq!("+--+".parse::<SignMask>().unwrap().signs(), &[1, -1, -1, 1]);
        assert_eq!("+--+".parse::<SignMask>().unwrap().to_string(), "+--+");
        assert!(matches!("-+".parse::<SignMask>(), Err(Error::InvalidMask(_))));
        assert!(matches!("+x".parse::<SignMask>(), Err(Error::InvalidMask(_))));
        assert!(matches!(SignMask::new(vec![1, 0]), Err(Error::InvalidMask(_))));
    }
}
