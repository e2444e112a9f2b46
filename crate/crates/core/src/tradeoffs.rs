//! The four imaginarity/mixedness trade-off relations.
//!
//! | relation      | value                              | bound |
//! |---------------|------------------------------------|-------|
//! | `f_l1`        | M_l1^2/(d-1)^2 + S_l               | 1     |
//! | `msi`         | f_l1 + I_+                         | 1     |
//! | `comp_1norm`  | d/(2(d-1)) M_1 + S_1               | 1     |
//! | `comp_entropy`| M_r + S                            | ln d  |
//!
//! Slacks are always `bound - value`, so valid states give nonnegative slack.

use crate::measures::{self, i_plus, m_1, m_l1, s_1, s_linear, s_von_neumann};
use crate::states::{real_part, DensityMatrix};

/// Bound minus value for each relation.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Slacks {
    pub f_l1: f64,
    pub msi: f64,
    pub comp_1norm: f64,
    pub comp_entropy: f64,
}

impl Slacks {
    pub fn min(&self) -> f64 {
        self.f_l1.min(self.msi).min(self.comp_1norm).min(self.comp_entropy)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TradeoffReport {
    pub dim: usize,
    pub f_l1: f64,
    pub msi: f64,
    pub comp_1norm: f64,
    pub comp_entropy: f64,
    pub slacks: Slacks,
    pub is_mims: bool,
}

impl TradeoffReport {
    pub const CSV_HEADER: &'static str =
        "f_l1,msi,comp_1norm,comp_entropy,slack_f_l1,slack_msi,slack_comp_1norm,slack_comp_entropy,is_mims";
}

fn dim_f(rho: &DensityMatrix) -> f64 {
    rho.dim() as f64
}

/// M_l1^2/(d-1)^2 + S_l. For qubits this is F = 1 - r1^2 - r3^2.
pub fn f_l1(rho: &DensityMatrix) -> f64 {
    let m = m_l1(rho) / (dim_f(rho) - 1.0);
    m * m + s_linear(rho)
}

pub fn msi(rho: &DensityMatrix) -> f64 {
    f_l1(rho) + i_plus(rho)
}

pub fn comp_1norm(rho: &DensityMatrix) -> f64 {
    let d = dim_f(rho);
    d / (2.0 * (d - 1.0)) * m_1(rho) + s_1(rho)
}

/// M_r + S, which is identically S(Re rho).
pub fn comp_entropy(rho: &DensityMatrix) -> f64 {
    measures::m_r(rho) + s_von_neumann(rho)
}

/// Evaluates all four relations. `is_mims` follows the l1 relation alone:
/// 1 - f_l1 <= tol.
pub fn verify(rho: &DensityMatrix, tol: f64) -> TradeoffReport {
    let d = dim_f(rho);
    let report = measures::report(rho);
    let m = report.m_l1 / (d - 1.0);
    let f = m * m + report.s_lin;
    let msi = f + report.i_plus;
    let comp_1norm = d / (2.0 * (d - 1.0)) * report.m_1 + report.s_1;
    let comp_entropy = report.m_r + report.s_vn;
    TradeoffReport {
        dim: rho.dim(),
        f_l1: f,
        msi,
        comp_1norm,
        comp_entropy,
        slacks: Slacks {
            f_l1: 1.0 - f,
            msi: 1.0 - msi,
            comp_1norm: 1.0 - comp_1norm,
            comp_entropy: libm::log(d) - comp_entropy,
        },
        is_mims: 1.0 - f <= tol,
    }
}

/// S(Re rho), the value `comp_entropy` must equal.
pub fn real_part_entropy(rho: &DensityMatrix) -> f64 {
    s_von_neumann(&real_part(rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mims::{ddim_mims, noisy_plus, qutrit_mims, MimsSpec, SignMask, Variant};
    use crate::states::{from_bloch, random_state, BlochVector};

    #[test]
    fn maximally_mixed_saturates_everything() {
        for d in 2..7 {
            let rho = DensityMatrix::maximally_mixed(d).unwrap();
            assert!((f_l1(&rho) - 1.0).abs() < 1e-15);
            assert!((comp_1norm(&rho) - 1.0).abs() < 1e-15);
            assert!((comp_entropy(&rho) - libm::log(d as f64)).abs() < 1e-14);
        }
    }

    #[test]
    fn qubit_f_is_one_minus_r1_squared_minus_r3_squared() {
        let r = BlochVector::new(0.3, -0.4, 0.5);
        let rho = from_bloch(r).unwrap();
        assert!((f_l1(&rho) - (1.0 - 0.09 - 0.25)).abs() < 1e-15);
        assert!((msi(&rho) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn noisy_plus_qutrit_value() {
        assert!((f_l1(&noisy_plus(3, 1.0).unwrap()) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn msi_saturates_on_mims_and_not_on_generic_states() {
        let spec = MimsSpec::new(6, 0.97, Variant::Lower, "+-+--+".parse().unwrap()).unwrap();
        assert!((msi(&ddim_mims(&spec).unwrap()) - 1.0).abs() < 1e-12);
        let v = msi(&random_state(3, 11).unwrap());
        assert!(v < 1.0 - 1e-6, "msi = {v}");
    }

    #[test]
    fn comp_1norm_examples() {
        let spec = MimsSpec::new(4, 0.9, Variant::Lower, SignMask::identity(4)).unwrap();
        assert!((comp_1norm(&ddim_mims(&spec).unwrap()) - 1.0).abs() < 1e-12);
        let rho = from_bloch(BlochVector::new(0.5, 0.0, 0.0)).unwrap();
        assert!((comp_1norm(&rho) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn comp_entropy_examples() {
        let rho = from_bloch(BlochVector::new(0.0, 0.35, 0.0)).unwrap();
        assert!((comp_entropy(&rho) - core::f64::consts::LN_2).abs() < 1e-14);
        let pure = DensityMatrix::pure(&[0.6.into(), 0.8.into()]).unwrap();
        assert!(comp_entropy(&pure).abs() < 1e-14);
    }

    #[test]
    fn verify_examples() {
        let r = verify(&qutrit_mims(0.8, 1).unwrap(), 1e-9);
        assert!(r.is_mims);

        let r = verify(&noisy_plus(3, 0.5).unwrap(), 1e-9);
        assert!(!r.is_mims);
        assert!((r.slacks.f_l1 - 3.0 * 0.25 / 4.0).abs() < 1e-14);

        let r = verify(&random_state(4, 3).unwrap(), 1e-9);
        assert!(r.slacks.min() >= 0.0, "{r:?}");
        assert_eq!(r.dim, 4);
    }

    #[test]
    fn comp_entropy_is_entropy_of_real_part() {
        for seed in 0..200 {
            let rho = random_state(2 + (seed as usize % 5), seed).unwrap();
            assert!((comp_entropy(&rho) - real_part_entropy(&rho)).abs() < 1e-12);
        }
    }
}
