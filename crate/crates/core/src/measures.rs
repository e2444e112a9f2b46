//! Imaginarity, coherence and mixedness functionals.
//!
//! Entropies are in nats. All functions take an already validated state and
//! cannot fail.

use crate::matrix::{modulus, CMatrix};
use crate::states::{self, real_part, DensityMatrix};

/// All eight functionals of one state.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MeasureReport {
    pub m_l1: f64,
    pub m_1: f64,
    pub m_r: f64,
    pub c_l1: f64,
    pub s_lin: f64,
    pub s_vn: f64,
    pub s_1: f64,
    pub i_plus: f64,
}

impl MeasureReport {
    pub const CSV_HEADER: &'static str = "m_l1,m_1,m_r,c_l1,s_lin,s_vn,s_1,i_plus";

    pub fn values(&self) -> [f64; 8] {
        [
            self.m_l1, self.m_1, self.m_r, self.c_l1, self.s_lin, self.s_vn, self.s_1, self.i_plus,
        ]
    }
}

fn dim_f(rho: &DensityMatrix) -> f64 {
    rho.dim() as f64
}

/// l1-norm of imaginarity: sum over j != k of |Im rho_jk|.
pub fn m_l1(rho: &DensityMatrix) -> f64 {
    let d = rho.dim();
    let mut sum = 0.0;
    for j in 0..d {
        for k in 0..d {
            if j != k {
                sum += rho.entry(j, k).im.abs();
            }
        }
    }
    sum
}

/// 1-norm of imaginarity, (1/2) ||rho - rho^T||_1.
pub fn m_1(rho: &DensityMatrix) -> f64 {
    let diff = rho.matrix() - &rho.matrix().transpose();
    // rho - rho^T = 2i Im(rho) is Hermitian whenever rho is
    0.5 * states::trace_norm(&diff).expect("difference of a state and its transpose is Hermitian")
}

/// Relative entropy of imaginarity, S(Re rho) - S(rho). Clamped at zero.
pub fn m_r(rho: &DensityMatrix) -> f64 {
    (s_von_neumann(&real_part(rho)) - s_von_neumann(rho)).max(0.0)
}

/// l1-norm of coherence: sum over j != k of |rho_jk|.
pub fn c_l1(rho: &DensityMatrix) -> f64 {
    let d = rho.dim();
    let mut sum = 0.0;
    for j in 0..d {
        for k in 0..d {
            if j != k {
                sum += modulus(rho.entry(j, k));
            }
        }
    }
    sum
}

/// Normalized linear entropy (d/(d-1)) (1 - Tr rho^2).
pub fn s_linear(rho: &DensityMatrix) -> f64 {
    let d = dim_f(rho);
    d / (d - 1.0) * (1.0 - rho.purity())
}

/// von Neumann entropy with 0 ln 0 = 0.
pub fn s_von_neumann(rho: &DensityMatrix) -> f64 {
    entropy_of(&states::spectrum(rho).eigenvalues)
}

/// -sum p ln p over a probability vector, each entry clamped to [0, 1].
pub fn entropy_of(probabilities: &[f64]) -> f64 {
    probabilities
        .iter()
        .map(|&p| p.clamp(0.0, 1.0))
        .filter(|&p| p > 0.0)
        .map(|p| -p * libm::log(p))
        .sum()
}

/// 1-norm of mixedness, 1 - (d/(2(d-1))) ||rho - I/d||_1.
pub fn s_1(rho: &DensityMatrix) -> f64 {
    let d = dim_f(rho);
    let diff = rho.matrix() - &CMatrix::identity(rho.dim()).scale(1.0 / d);
    let norm = states::trace_norm(&diff).expect("rho - I/d is Hermitian");
    1.0 - d / (2.0 * (d - 1.0)) * norm
}

/// Normalized BZ invariant information term (d/(d-1)) (Tr[Re(rho)^2] - 1/d).
pub fn i_plus(rho: &DensityMatrix) -> f64 {
    let d = dim_f(rho);
    d / (d - 1.0) * (real_part(rho).purity() - 1.0 / d)
}

pub fn report(rho: &DensityMatrix) -> MeasureReport {
    let re = real_part(rho);
    let s_vn = s_von_neumann(rho);
    MeasureReport {
        m_l1: m_l1(rho),
        m_1: m_1(rho),
        m_r: (s_von_neumann(&re) - s_vn).max(0.0),
        c_l1: c_l1(rho),
        s_lin: s_linear(rho),
        s_vn,
        s_1: s_1(rho),
        i_plus: i_plus(rho),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{from_bloch, random_state, validate, BlochVector};
    use core::f64::consts::LN_2;

    fn binary_entropy(p: f64) -> f64 {
        -p * libm::log(p) - (1.0 - p) * libm::log(1.0 - p)
    }

    fn qubit_mims(p: f64) -> DensityMatrix {
        from_bloch(BlochVector::new(0.0, p, 0.0)).unwrap()
    }

    #[test]
    fn real_states_carry_no_imaginarity() {
        let rho = validate(CMatrix::from_real(3, &[0.5, 0.1, 0.2, 0.1, 0.3, -0.05, 0.2, -0.05, 0.2])).unwrap();
        assert_eq!(m_l1(&rho), 0.0);
        assert!(m_1(&rho) < 1e-15);
        assert!(m_r(&rho) < 1e-14);
    }

    #[test]
    fn m_l1_examples() {
        assert_eq!(m_l1(&qubit_mims(-0.7)), 0.7);
        assert_eq!(m_l1(&qubit_mims(0.3)), 0.3);
    }

    #[test]
    fn m_1_examples() {
        assert!((m_1(&qubit_mims(0.45)) - 0.45).abs() < 1e-15);
        assert!((m_1(&qubit_mims(-1.0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn m_r_examples() {
        assert!((m_r(&qubit_mims(1.0)) - LN_2).abs() < 1e-14);
        let expected = LN_2 - binary_entropy(0.75);
        assert!((m_r(&qubit_mims(0.5)) - expected).abs() < 1e-14);
    }

    #[test]
    fn c_l1_examples() {
        let diag = validate(CMatrix::from_diagonal(&[0.1, 0.2, 0.7])).unwrap();
        assert_eq!(c_l1(&diag), 0.0);
        let rho = from_bloch(BlochVector::new(0.3, 0.4, 0.0)).unwrap();
        assert!((c_l1(&rho) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn entropy_examples() {
        let pure = from_bloch(BlochVector::new(0.0, 0.0, 1.0)).unwrap();
        assert_eq!(s_linear(&pure), 0.0);
        assert_eq!(s_von_neumann(&pure), 0.0);
        assert!(s_1(&pure).abs() < 1e-15);
        for d in 2..7 {
            let mixed = DensityMatrix::maximally_mixed(d).unwrap();
            assert!((s_linear(&mixed) - 1.0).abs() < 1e-15);
            assert!((s_von_neumann(&mixed) - libm::log(d as f64)).abs() < 1e-14);
            assert!((s_1(&mixed) - 1.0).abs() < 1e-15);
        }
        let rho = validate(CMatrix::from_diagonal(&[0.75, 0.25])).unwrap();
        assert!((s_von_neumann(&rho) - 0.562_335_144_618_808_5).abs() < 1e-15);
        assert!((s_von_neumann(&rho) - binary_entropy(0.75)).abs() < 1e-15);
    }

    #[test]
    fn entropy_ignores_round_off_below_zero() {
        assert_eq!(entropy_of(&[1.0, -1e-17, 0.0]), 0.0);
    }

    #[test]
    fn qubit_closed_forms() {
        let r = BlochVector::new(0.2, -0.5, 0.6);
        let rho = from_bloch(r).unwrap();
        assert!((s_linear(&rho) - (1.0 - r.norm_sqr())).abs() < 1e-15);
        assert!((s_1(&rho) - (1.0 - r.norm())).abs() < 1e-15);
        assert!((i_plus(&rho) - (0.04 + 0.36)).abs() < 1e-15);
    }

    #[test]
    fn i_plus_vanishes_iff_real_part_is_maximally_mixed() {
        assert!(i_plus(&qubit_mims(0.9)).abs() < 1e-15);
        let real_pure = DensityMatrix::pure(&[0.6.into(), 0.0.into(), 0.8.into()]).unwrap();
        assert!((i_plus(&real_pure) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn report_examples() {
        let r = report(&DensityMatrix::maximally_mixed(2).unwrap());
        assert_eq!((r.m_l1, r.c_l1, r.i_plus), (0.0, 0.0, 0.0));
        assert!(r.m_1 < 1e-15 && r.m_r < 1e-15);
        assert!((r.s_lin - 1.0).abs() < 1e-15 && (r.s_1 - 1.0).abs() < 1e-15);
        assert!((r.s_vn - LN_2).abs() < 1e-15);

        let p = 0.6;
        let r = report(&qubit_mims(p));
        assert!((r.m_l1 - p).abs() < 1e-15 && (r.m_1 - p).abs() < 1e-15);
        assert!((r.s_lin - (1.0 - p * p)).abs() < 1e-15);

        let rho = random_state(3, 7).unwrap();
        let r = report(&rho);
        assert!(r.m_l1 <= r.c_l1);
        assert!((0.0..=1.0).contains(&r.s_lin));
        assert!(r.s_vn >= 0.0 && r.s_vn <= libm::log(3.0));
        assert!((0.0..=1.0).contains(&r.s_1));
        assert_eq!(r.m_r, m_r(&rho));
    }
}
