//! Numerical extremality oracles.
//!
//! [`max_imaginarity_at_mixedness`] maximizes M_l1 over all d-dimensional
//! states with linear entropy fixed to `s`, to compare against the ceiling
//! (d-1) sqrt(1-s). Writing sigma for the sign pattern of Im(rho) above the
//! diagonal, M_l1(rho) = Tr(M rho) with M Hermitian, M_jk = i sigma_jk (j < k).
//! For fixed M the maximum of Tr(M rho) over the fixed-purity slice is a
//! state diagonal in M's eigenbasis whose eigenvalues solve a small
//! sphere-in-simplex problem exactly. Alternating "read the sign pattern" and
//! "maximize the linearization" never decreases M_l1, since the new state's
//! own sign pattern can only do better than the old one. Random restarts
//! (Haar eigenbasis, random spectrum on the slice) supply the exploration.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eigen::{hermitian_eigen, reconstruct};
use crate::error::{Error, Result};
use crate::matrix::{modulus, unit_phase, CMatrix};
use crate::measures::m_l1;
use crate::mims::{mcms, qubit_mims, qutrit_mims, SignMask, Variant};
use crate::states::{from_bloch, haar_unitary, validate, BlochVector, DensityMatrix};

/// Iteration cap per restart.
pub const MAX_ASCENT_STEPS: usize = 200;
/// Restarts used when no budget is given.
pub const DEFAULT_BUDGET: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_state: DensityMatrix,
    pub best_m_l1: f64,
    /// (d-1) sqrt(1-s)
    pub bound: f64,
    /// bound - best_m_l1
    pub gap: f64,
    pub evals: u64,
    pub seed: u64,
}

/// Tr(rho^2) of a d-dimensional state with normalized linear entropy s.
pub fn purity_for_mixedness(d: usize, s: f64) -> f64 {
    let n = d as f64;
    1.0 - (n - 1.0) * s / n
}

/// Maximizes sum_k w_k x_k over probability vectors x with sum_k x_k^2 = purity.
///
/// The maximizer is x_k = max(0, a + b w_k) with b >= 0, supported on the
/// largest weights; every support size is tried and the best feasible one kept.
/// Returns `None` only if the purity is outside [1/d, 1].
pub fn slice_argmax(weights: &[f64], purity: f64) -> Option<Vec<f64>> {
    let d = weights.len();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]));

    let mut best: Option<(f64, Vec<f64>)> = None;
    for m in 1..=d {
        let inv = 1.0 / m as f64;
        if purity < inv - 1e-15 {
            continue;
        }
        let top = &order[..m];
        let mean = top.iter().map(|&k| weights[k]).sum::<f64>() * inv;
        let mut u: Vec<f64> = top.iter().map(|&k| weights[k] - mean).collect();
        let mut su: f64 = u.iter().map(|x| x * x).sum();
        if su < 1e-300 {
            if m == 1 {
                su = 0.0;
            } else {
                // flat weights: any direction on the slice scores the same
                u = (0..m).map(|j| if j == 0 { 1.0 - inv } else { -inv }).collect();
                su = 1.0 - inv;
            }
        }
        let excess = (purity - inv).max(0.0);
        if su == 0.0 && excess > 1e-12 {
            continue;
        }
        let beta = if su == 0.0 { 0.0 } else { libm::sqrt(excess / su) };
        let local: Vec<f64> = u.iter().map(|&x| inv + beta * x).collect();
        if local.iter().any(|&x| x < -1e-14) {
            continue;
        }
        let mut x = vec![0.0; d];
        for (&k, &v) in top.iter().zip(&local) {
            x[k] = v.max(0.0);
        }
        let score: f64 = x.iter().zip(weights).map(|(a, b)| a * b).sum();
        if best.as_ref().is_none_or(|(s, _)| score > *s) {
            best = Some((score, x));
        }
    }
    best.map(|(_, x)| x)
}

/// M with Tr(M rho) = M_l1(rho) near rho.
fn sign_operator(rho: &CMatrix) -> CMatrix {
    let d = rho.dim();
    let mut m = CMatrix::zeros(d);
    for j in 0..d {
        for k in j + 1..d {
            let sigma = if rho[(j, k)].im >= 0.0 { 1.0 } else { -1.0 };
            m[(j, k)] = Complex64::new(0.0, sigma);
            m[(k, j)] = Complex64::new(0.0, -sigma);
        }
    }
    m
}

/// One linearize-and-maximize step on the slice Tr(rho^2) = purity.
fn ascent_step(rho: &CMatrix, purity: f64) -> Option<CMatrix> {
    let eig = hermitian_eigen(&sign_operator(rho));
    let lambda = slice_argmax(&eig.values, purity)?;
    Some(reconstruct(&eig.vectors, &lambda))
}

fn imag_l1(m: &CMatrix) -> f64 {
    let d = m.dim();
    let mut sum = 0.0;
    for j in 0..d {
        for k in 0..d {
            if j != k {
                sum += m[(j, k)].im.abs();
            }
        }
    }
    sum
}

fn random_start<R: Rng + ?Sized>(d: usize, purity: f64, rng: &mut R) -> Option<CMatrix> {
    let weights: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
    let lambda = slice_argmax(&weights, purity)?;
    let v = haar_unitary(d, rng);
    Some(reconstruct(&v, &lambda))
}

/// Largest M_l1 found at linear entropy `s` over `budget` random restarts.
/// Deterministic in `seed`; restart `i` draws from ChaCha stream `i`.
pub fn max_imaginarity_at_mixedness(d: usize, s: f64, budget: usize, seed: u64) -> Result<SearchResult> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if !(0.0..1.0).contains(&s) {
        return Err(Error::InvalidMixedness(s));
    }
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be at least 1"));
    }
    let purity = purity_for_mixedness(d, s);
    let mut evals = 0u64;
    let mut best: Option<(f64, CMatrix)> = None;

    for restart in 0..budget {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(restart as u64);
        let Some(mut rho) = random_start(d, purity, &mut rng) else {
            continue;
        };
        let mut value = imag_l1(&rho);
        evals += 1;
        for _ in 0..MAX_ASCENT_STEPS {
            let Some(next) = ascent_step(&rho, purity) else {
                break;
            };
            let next_value = imag_l1(&next);
            evals += 1;
            if next_value <= value + 1e-15 {
                if next_value > value {
                    rho = next;
                    value = next_value;
                }
                break;
            }
            rho = next;
            value = next_value;
        }
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            best = Some((value, rho));
        }
    }

    let (_, rho) = best.ok_or(Error::InvalidArgument("no feasible starting state"))?;
    let best_state = validate(rho)?;
    let best_m_l1 = m_l1(&best_state);
    let bound = (d as f64 - 1.0) * libm::sqrt(1.0 - s);
    Ok(SearchResult {
        best_state,
        best_m_l1,
        bound,
        gap: bound - best_m_l1,
        evals,
        seed,
    })
}

/// Exhaustive qubit oracle: scans an n x n grid of (r1, r3) over [-R, R]^2,
/// R = sqrt(1-s), puts r2 = +-sqrt(R^2 - r1^2 - r3^2) on the sphere of
/// mixedness s, and keeps the largest M_l1.
pub fn qubit_grid_oracle(s: f64, n: usize) -> Result<SearchResult> {
    if !(0.0..1.0).contains(&s) {
        return Err(Error::InvalidMixedness(s));
    }
    if n < 10 {
        return Err(Error::InvalidArgument("grid needs at least 10 points per axis"));
    }
    let radius = libm::sqrt(1.0 - s);
    let axis: Vec<f64> = (0..n)
        .map(|k| -radius + 2.0 * radius * k as f64 / (n - 1) as f64)
        .collect();
    let mut evals = 0u64;
    let mut best: Option<(f64, DensityMatrix)> = None;
    for &r1 in &axis {
        for &r3 in &axis {
            let rest = radius * radius - r1 * r1 - r3 * r3;
            if rest < 0.0 {
                continue;
            }
            for sign in [1.0, -1.0] {
                let rho = from_bloch(BlochVector::new(r1, sign * libm::sqrt(rest), r3))?;
                let value = m_l1(&rho);
                evals += 1;
                if best.as_ref().is_none_or(|(v, _)| value > *v) {
                    best = Some((value, rho));
                }
            }
        }
    }
    let (best_m_l1, best_state) = best.ok_or(Error::InvalidArgument("empty grid"))?;
    Ok(SearchResult {
        best_state,
        best_m_l1,
        bound: radius,
        gap: radius - best_m_l1,
        evals,
        seed: 0,
    })
}

fn max_entry_distance_upper(a: &[Complex64; 3], b: &[Complex64; 3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| modulus(x - y)).fold(0.0, f64::max)
}

/// Smallest max-entry distance between diag(e^{i theta}) rho_m diag(e^{-i theta})
/// and the first qutrit MIMS, over a uniform `grid_n`^3 grid of phases in
/// [0, 2 pi)^3. rho_m = mcms(3, 3|y|) so the off-diagonal moduli agree; a
/// positive value means no phase choice on the grid turns one into the other.
pub fn qutrit_unitary_witness(s: f64, grid_n: usize) -> Result<f64> {
    if s.is_nan() || s >= 1.0 {
        return Err(Error::InvalidMixedness(s));
    }
    let target = qutrit_mims(s, 1)?;
    if grid_n < 50 {
        return Err(Error::InvalidArgument("grid needs at least 50 phases per axis"));
    }
    let y = libm::sqrt(1.0 - s) / 3.0;
    let reference = mcms(3, 3.0 * y)?;
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    let goal: [Complex64; 3] = pairs.map(|(j, k)| target.entry(j, k));
    let base: [Complex64; 3] = pairs.map(|(j, k)| reference.entry(j, k));
    let phase: Vec<Complex64> = (0..grid_n)
        .map(|k| unit_phase(2.0 * PI * k as f64 / grid_n as f64))
        .collect();

    // Only phase differences enter, and shifting all three phases by one grid
    // step stays on the grid, so theta_1 = 0 covers every attainable value.
    let mut best = f64::INFINITY;
    for a in 0..grid_n {
        for b in 0..grid_n {
            // U rho U^dag has entries e^{i(theta_j - theta_k)} rho_jk
            let e01 = phase[a].conj();
            let e02 = phase[b].conj();
            let e12 = phase[a] * phase[b].conj();
            let candidate = [base[0] * e01, base[1] * e02, base[2] * e12];
            best = best.min(max_entry_distance_upper(&candidate, &goal));
        }
    }
    Ok(best)
}

/// Qubit counterpart of [`qutrit_unitary_witness`]: the distance between
/// diag(1, i) rho_m diag(1, -i) and the qubit MIMS, which vanishes.
pub fn qubit_unitary_distance(s: f64) -> Result<f64> {
    let p = libm::sqrt(1.0 - s);
    let target = qubit_mims(s, Variant::Lower, &SignMask::identity(2))?;
    let rho_m = mcms(2, p)?;
    let u = CMatrix::from_diagonal(&[1.0, 0.0]);
    let mut u = u;
    u[(1, 1)] = Complex64::new(0.0, 1.0);
    let image = &(&u * rho_m.matrix()) * &u.adjoint();
    Ok(image.max_abs_diff(target.matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::s_linear;
    use crate::mims::threshold;

    #[test]
    fn slice_argmax_respects_constraints() {
        let w = [0.3, -1.0, 2.0, 0.5];
        for &purity in &[0.25, 0.3, 0.5, 0.8, 1.0] {
            let x = slice_argmax(&w, purity).unwrap();
            assert!((x.iter().sum::<f64>() - 1.0).abs() < 1e-14);
            assert!((x.iter().map(|v| v * v).sum::<f64>() - purity).abs() < 1e-14);
            assert!(x.iter().all(|&v| v >= 0.0));
        }
        assert_eq!(slice_argmax(&w, 1.0).unwrap(), [0.0, 0.0, 1.0, 0.0]);
        assert!(slice_argmax(&w, 0.1).is_none());
    }

    #[test]
    fn slice_argmax_beats_random_feasible_points() {
        let w = [1.7, 0.0, -1.7];
        let purity = 0.8;
        let x = slice_argmax(&w, purity).unwrap();
        let score: f64 = x.iter().zip(&w).map(|(a, b)| a * b).sum();
        // brute force over the circle {sum = 1, sum of squares = purity}
        let r = libm::sqrt(purity - 1.0 / 3.0);
        let e1 = [1.0 / libm::sqrt(2.0), -1.0 / libm::sqrt(2.0), 0.0];
        let e2 = [1.0 / libm::sqrt(6.0), 1.0 / libm::sqrt(6.0), -2.0 / libm::sqrt(6.0)];
        let mut brute = f64::NEG_INFINITY;
        for k in 0..100_000 {
            let t = 2.0 * PI * k as f64 / 100_000.0;
            let p: Vec<f64> = (0..3)
                .map(|j| 1.0 / 3.0 + r * (libm::cos(t) * e1[j] + libm::sin(t) * e2[j]))
                .collect();
            if p.iter().all(|&v| v >= 0.0) {
                brute = brute.max(p.iter().zip(&w).map(|(a, b)| a * b).sum());
            }
        }
        assert!(score >= brute - 1e-12);
        assert!(score - brute < 1e-3);
    }

    #[test]
    fn qubit_search_reaches_the_ceiling() {
        let res = max_imaginarity_at_mixedness(2, 0.5, 8, 1).unwrap();
        assert!(res.gap <= 1e-4 && res.gap >= -1e-9, "{res:?}");
        assert!((s_linear(&res.best_state) - 0.5).abs() < 1e-8);
        let grid = qubit_grid_oracle(0.5, 400).unwrap();
        assert!((grid.best_m_l1 - res.best_m_l1).abs() < 1e-4);
    }

    #[test]
    fn qutrit_search_feasible_and_infeasible() {
        let res = max_imaginarity_at_mixedness(3, 0.8, 16, 3).unwrap();
        assert!(res.gap <= 1e-4 && res.gap >= -1e-9, "{res:?}");
        let res = max_imaginarity_at_mixedness(3, 0.3, 16, 3).unwrap();
        assert!(res.gap > 0.1, "{res:?}");
        assert!((s_linear(&res.best_state) - 0.3).abs() < 1e-8);
    }

    #[test]
    fn search_is_deterministic() {
        let a = max_imaginarity_at_mixedness(4, 0.9, 4, 77).unwrap();
        let b = max_imaginarity_at_mixedness(4, 0.9, 4, 77).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn search_rejects_bad_input() {
        assert_eq!(max_imaginarity_at_mixedness(3, 1.0, 4, 0), Err(Error::InvalidMixedness(1.0)));
        assert_eq!(max_imaginarity_at_mixedness(1, 0.5, 4, 0), Err(Error::DimensionTooSmall(1)));
        assert!(max_imaginarity_at_mixedness(3, 0.5, 0, 0).is_err());
    }

    #[test]
    fn qubit_grid_examples() {
        assert!(qubit_grid_oracle(0.0, 400).unwrap().best_m_l1 >= 0.99999);
        assert!((qubit_grid_oracle(0.75, 400).unwrap().best_m_l1 - 0.5).abs() < 1e-4);
        assert!(qubit_grid_oracle(1.0 - 1e-10, 50).unwrap().best_m_l1 < 1e-5);
    }

    #[test]
    fn witness_is_positive_and_deterministic() {
        let a = qutrit_unitary_witness(2.0 / 3.0, 200).unwrap();
        let b = qutrit_unitary_witness(2.0 / 3.0, 200).unwrap();
        assert_eq!(a, b);
        // best continuous compromise spreads a quarter-turn mismatch over three
        // entries: each misses by pi/6, a distance of 2|y| sin(pi/12)
        let y = libm::sqrt(1.0 / 3.0) / 3.0;
        let floor = 2.0 * y * libm::sin(PI / 12.0);
        assert!(a >= floor - 1e-12, "{a} < {floor}");
        assert!(a < floor + 0.01);
        assert!(matches!(qutrit_unitary_witness(0.5, 200), Err(Error::BelowThreshold { .. })));
        assert!(qutrit_unitary_witness(0.8, 10).is_err());
    }

    #[test]
    fn qubit_analogue_is_exact() {
        for &s in &[0.0, 0.4, 0.9] {
            assert!(qubit_unitary_distance(s).unwrap() < 1e-16);
        }
    }

    #[test]
    fn threshold_family_reaches_ceiling_in_search() {
        for d in 4..=5 {
            let s = (threshold(d) + 1.0) / 2.0;
            let res = max_imaginarity_at_mixedness(d, s, 32, 11).unwrap();
            assert!(res.gap <= 1e-3, "d = {d}: {res:?}");
        }
    }
}
