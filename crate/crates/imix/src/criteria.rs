//! The acceptance criteria as runnable checks.
//!
//! Each check returns an [`Outcome`] instead of panicking so that a single
//! run reports every criterion. [`Scale::Quick`] shrinks the sample counts for
//! smoke runs; tolerances never change.

use std::f64::consts::PI;
use std::time::Instant;

use imix_core::channels::{
    apply, depolarize_affine, f_out_closed, linspace, named_channel, random_real_channel, sweep_ad, ChannelKind,
};
use imix_core::measures::{m_1, m_l1, m_r};
use imix_core::mims::{
    ddim_mims, family_matrix, mims_spectrum_closed_form, noisy_plus, qutrit_mims, threshold, y_magnitude, MimsSpec,
    SignMask, Variant,
};
use imix_core::search::{max_imaginarity_at_mixedness, qutrit_unitary_witness, DEFAULT_BUDGET};
use imix_core::states::{from_bloch, hermitian_spectrum, random_state, spectrum, validate, BlochVector};
use imix_core::tradeoffs::{f_l1, msi, verify};
use imix_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fixtures::{self, Pinned};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Full,
    Quick,
}

impl Scale {
    fn samples(self, full: usize) -> usize {
        match self {
            Scale::Full => full,
            Scale::Quick => (full / 100).max(1),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!("criterion {:>2} {verdict} {}: {}", self.id, self.name, self.detail)
    }
}

fn outcome(id: u8, name: &'static str, passed: bool, detail: String) -> Outcome {
    Outcome { id, name, passed, detail }
}

fn failed(id: u8, name: &'static str, err: impl std::fmt::Display) -> Outcome {
    outcome(id, name, false, format!("error: {err}"))
}

pub fn run_all(scale: Scale, pinned: &Pinned) -> Vec<Outcome> {
    vec![
        tradeoff_inequalities(scale),
        mims_saturation(scale),
        spectral_closed_form(),
        qutrit_thresholds(),
        noisy_plus_formula(),
        channel_closed_forms(scale),
        amplitude_damping_crossing(),
        real_channel_monotonicity(scale),
        extremality(pinned),
        qubit_msi_identity(scale),
    ]
}

pub fn tradeoff_inequalities(scale: Scale) -> Outcome {
    const NAME: &str = "trade-off inequalities on random states";
    let start = Instant::now();
    let per_dim = scale.samples(10_000);
    let mut worst = [f64::INFINITY; 4];
    for d in 2..=6usize {
        let ln_d = (d as f64).ln();
        for seed in 0..per_dim as u64 {
            let rho = match random_state(d, seed) {
                Ok(r) => r,
                Err(e) => return failed(1, NAME, e),
            };
            let r = verify(&rho, 1e-9);
            worst[0] = worst[0].min(r.slacks.f_l1);
            worst[1] = worst[1].min(r.slacks.msi);
            worst[2] = worst[2].min(1.0 - r.comp_1norm);
            worst[3] = worst[3].min(ln_d - r.comp_entropy);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let passed = worst.iter().all(|&w| w >= -1e-9) && elapsed < 60.0;
    outcome(
        1,
        NAME,
        passed,
        format!(
            "{per_dim} states per d in 2..=6, min slacks l1 {:.3e} msi {:.3e} 1-norm {:.3e} entropy {:.3e}, {elapsed:.1}s",
            worst[0], worst[1], worst[2], worst[3]
        ),
    )
}

pub fn mims_saturation(scale: Scale) -> Outcome {
    const NAME: &str = "MIMS saturate all four relations";
    let masks = scale.samples(20);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for d in 2..=16usize {
        let lo = threshold(d);
        let ln_d = (d as f64).ln();
        for k in 0..10 {
            let s = lo + (1.0 - lo) * k as f64 / 10.0;
            for variant in [Variant::Lower, Variant::Upper] {
                for _ in 0..masks {
                    let mask = SignMask::random(d, &mut rng);
                    let rho = match MimsSpec::new(d, s, variant, mask).and_then(|spec| ddim_mims(&spec)) {
                        Ok(r) => r,
                        Err(e) => return failed(2, NAME, format!("d = {d}, s = {s}: {e}")),
                    };
                    let r = verify(&rho, 1e-10);
                    let dev = (r.f_l1 - 1.0)
                        .abs()
                        .max((r.msi - 1.0).abs())
                        .max((r.comp_1norm - 1.0).abs())
                        .max((r.comp_entropy - ln_d).abs());
                    worst = worst.max(dev);
                    count += 1;
                }
            }
        }
    }
    outcome(
        2,
        NAME,
        worst <= 1e-10,
        format!("{count} states, max deviation from saturation {worst:.3e}"),
    )
}

pub fn spectral_closed_form() -> Outcome {
    const NAME: &str = "MIMS closed-form spectrum";
    let mut worst: f64 = 0.0;
    let mut edge: f64 = 0.0;
    for d in 2..=16usize {
        let y_max = y_magnitude(d, threshold(d));
        for j in 1..=50 {
            for sign in [1.0, -1.0] {
                let y = sign * y_max * j as f64 / 50.0;
                let closed = match mims_spectrum_closed_form(d, y) {
                    Ok(c) => c,
                    Err(e) => return failed(3, NAME, e),
                };
                worst = worst.max(closed.max_abs_diff(&hermitian_spectrum(&family_matrix(d, y))));
            }
        }
        for sign in [1.0, -1.0] {
            match mims_spectrum_closed_form(d, sign * y_max) {
                Ok(c) => edge = edge.max(c.min().abs()),
                Err(e) => return failed(3, NAME, e),
            }
        }
    }
    outcome(
        3,
        NAME,
        worst <= 1e-10 && edge <= 1e-12,
        format!("max spectral deviation {worst:.3e}, |min eigenvalue| at threshold {edge:.3e}"),
    )
}

pub fn qutrit_thresholds() -> Outcome {
    const NAME: &str = "qutrit threshold 2/3";
    let at = match qutrit_mims(2.0 / 3.0, 1) {
        Ok(rho) => rho,
        Err(e) => return failed(4, NAME, e),
    };
    let eig = spectrum(&at).eigenvalues;
    let expected = [0.0, 1.0 / 3.0, 2.0 / 3.0];
    let spec_dev = eig.iter().zip(&expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let below = 2.0 / 3.0 - 1e-6;
    let all_rejected = (1..=8).all(|k| matches!(qutrit_mims(below, k), Err(Error::BelowThreshold { .. })));
    let raw = validate(family_matrix(3, y_magnitude(3, below)));
    let raw_negative = match raw {
        Err(Error::NotPsd { min_eigenvalue }) => min_eigenvalue < 0.0,
        _ => false,
    };
    outcome(
        4,
        NAME,
        spec_dev <= 1e-12 && all_rejected && raw_negative,
        format!(
            "spectrum at 2/3 off by {spec_dev:.3e}, 8 variants rejected below: {all_rejected}, raw matrix negative: {raw_negative}"
        ),
    )
}

pub fn noisy_plus_formula() -> Outcome {
    const NAME: &str = "noisy maximally imaginary state";
    let mut worst: f64 = 0.0;
    let mut non_mims = true;
    for d in 2..=8usize {
        let n = d as f64;
        for k in 1..=11 {
            let p = k as f64 / 11.0;
            let value = match noisy_plus(d, p) {
                Ok(rho) => f_l1(&rho),
                Err(e) => return failed(5, NAME, e),
            };
            worst = worst.max((value - (1.0 - n * (n - 2.0) * p * p / ((n - 1.0) * (n - 1.0)))).abs());
            if d >= 3 && value >= 1.0 {
                non_mims = false;
            }
        }
    }
    outcome(
        5,
        NAME,
        worst <= 1e-12 && non_mims,
        format!("max formula deviation {worst:.3e}, 11 values of p in (0, 1], below 1 for d >= 3: {non_mims}"),
    )
}

/// Deterministic Bloch-ball points: a Fibonacci spiral on the sphere with
/// radii spread through (0, 1].
pub fn bloch_grid(n: usize) -> Vec<BlochVector> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| {
            let z = 1.0 - (2 * k + 1) as f64 / n as f64;
            let rho = (1.0 - z * z).sqrt();
            let phi = golden * k as f64;
            let radius = ((k + 1) as f64 / n as f64).cbrt();
            BlochVector::new(radius * rho * phi.cos(), radius * rho * phi.sin(), radius * z)
        })
        .collect()
}

pub fn channel_closed_forms(scale: Scale) -> Outcome {
    const NAME: &str = "qubit channel closed forms";
    let points = bloch_grid(scale.samples(1000).max(10));
    let p_grid = linspace(0.0, 1.0, 21);
    let mut worst: f64 = 0.0;
    let mut affine_worst: f64 = 0.0;
    let mut monotone_worst = f64::INFINITY;
    let mut strict_ok = true;
    let mut strict_checked = 0usize;
    for kind in ChannelKind::NAMED {
        for &p in &p_grid {
            let channel = match named_channel(kind, p) {
                Ok(c) => c,
                Err(e) => return failed(6, NAME, e),
            };
            for &r in &points {
                let run = || -> imix_core::Result<(f64, f64, f64, f64)> {
                    let rho = from_bloch(r)?;
                    let out = apply(&channel, &rho)?;
                    let affine = if kind == ChannelKind::Depolarizing {
                        f_l1(&depolarize_affine(p, &rho)?)
                    } else {
                        f_l1(&out)
                    };
                    Ok((f_l1(&rho), f_out_closed(kind, p, r)?, f_l1(&out), affine))
                };
                let (f_in, closed, numeric, affine) = match run() {
                    Ok(v) => v,
                    Err(e) => return failed(6, NAME, e),
                };
                worst = worst.max((closed - numeric).abs());
                affine_worst = affine_worst.max((closed - affine).abs());
                if kind == ChannelKind::AmplitudeDamping {
                    continue;
                }
                monotone_worst = monotone_worst.min(closed - f_in);
                let strict = match kind {
                    ChannelKind::BitFlip => p > 0.0 && p < 1.0 && r.r3 != 0.0,
                    ChannelKind::PhaseDamping => r.r1 != 0.0 && p != 1.0,
                    ChannelKind::Depolarizing => p != 0.0 && r.r1 * r.r1 + r.r3 * r.r3 > 0.0,
                    _ => false,
                };
                if strict {
                    strict_checked += 1;
                    strict_ok &= closed > f_in;
                }
            }
        }
    }
    outcome(
        6,
        NAME,
        worst <= 1e-12 && affine_worst <= 1e-12 && monotone_worst >= -1e-12 && strict_ok && strict_checked > 0,
        format!(
            "{}x{} grid, closed vs Kraus {worst:.3e} (affine {affine_worst:.3e}), min increase {monotone_worst:.3e}, {strict_checked} strict witnesses hold: {strict_ok}",
            p_grid.len(),
            points.len()
        ),
    )
}

pub fn amplitude_damping_crossing() -> Outcome {
    const NAME: &str = "amplitude damping crossing at pi/2";
    let thetas = linspace(0.0, PI, 101);
    let rows = match sweep_ad(&[0.5], &thetas) {
        Ok(r) => r,
        Err(e) => return failed(7, NAME, e),
    };
    let mut ok = true;
    let mut numeric_dev: f64 = 0.0;
    for (k, row) in rows.iter().enumerate() {
        let diff = row.f_out_closed - row.f_in;
        ok &= if k <= 50 { diff <= 0.0 } else { diff > 0.0 };
        numeric_dev = numeric_dev.max((row.f_out_numeric - row.f_out_closed).abs());
    }
    let mid = &rows[50];
    let eq = (mid.f_out_closed - mid.f_in).abs().max((mid.f_out_numeric - mid.f_in).abs());
    outcome(
        7,
        NAME,
        ok && eq <= 1e-12 && numeric_dev <= 1e-12 && mid.theta == PI / 2.0,
        format!("sign pattern holds: {ok}, |f_out - f_in| at pi/2 {eq:.3e}, numeric vs closed {numeric_dev:.3e}"),
    )
}

pub fn real_channel_monotonicity(scale: Scale) -> Outcome {
    const NAME: &str = "imaginarity monotone under real channels";
    let channels = scale.samples(100).max(5);
    let states = scale.samples(100).max(5);
    let mut parts = Vec::new();
    let mut passed = true;
    for d in [2usize, 3] {
        let mut worst = [f64::NEG_INFINITY; 3];
        let mut violations = [0usize; 3];
        for c in 0..channels as u64 {
            let channel = match random_real_channel(d, 1 + c as usize % 4, 1000 + c) {
                Ok(ch) => ch,
                Err(e) => return failed(8, NAME, e),
            };
            for s in 0..states as u64 {
                let (before, after) = match random_state(d, s).and_then(|rho| Ok((apply(&channel, &rho)?, rho))) {
                    Ok((out, rho)) => (rho, out),
                    Err(e) => return failed(8, NAME, e),
                };
                let increase = [
                    m_l1(&after) - m_l1(&before),
                    m_1(&after) - m_1(&before),
                    m_r(&after) - m_r(&before),
                ];
                for i in 0..3 {
                    worst[i] = worst[i].max(increase[i]);
                    if increase[i] > 1e-9 {
                        violations[i] += 1;
                    }
                }
            }
        }
        passed &= violations.iter().all(|&v| v == 0);
        parts.push(format!(
            "d={d}: max increase m_l1 {:.3e} ({} pairs), m_1 {:.3e} ({}), m_r {:.3e} ({})",
            worst[0], violations[0], worst[1], violations[1], worst[2], violations[2]
        ));
    }
    outcome(8, NAME, passed, format!("{channels}x{states} pairs; {}", parts.join("; ")))
}

pub fn extremality(pinned: &Pinned) -> Outcome {
    const NAME: &str = "extremality oracle";
    let mut worst_gap = f64::NEG_INFINITY;
    let mut min_gap = f64::INFINITY;
    let mut pairs = 0;
    for d in 2..=5usize {
        let lo = threshold(d);
        for k in 0..5 {
            let s = lo + (1.0 - lo) * k as f64 / 5.0;
            match max_imaginarity_at_mixedness(d, s, DEFAULT_BUDGET, pinned.search_seed) {
                Ok(r) => {
                    worst_gap = worst_gap.max(r.gap);
                    min_gap = min_gap.min(r.gap);
                    pairs += 1;
                }
                Err(e) => return failed(9, NAME, e),
            }
        }
    }
    let grid = fixtures::infeasible_mixedness_grid();
    let mut gaps_match = grid.len() == pinned.qutrit_gaps.len();
    for (s, point) in grid.iter().zip(&pinned.qutrit_gaps) {
        match fixtures::qutrit_gap(*s, pinned.search_budget, pinned.search_seed) {
            Ok(gap) => gaps_match &= point.mixedness == *s && gap == point.gap && gap > 0.0,
            Err(e) => return failed(9, NAME, e),
        }
    }
    let w = pinned.witness;
    let witness = match qutrit_unitary_witness(w.mixedness, w.grid_n) {
        Ok(v) => v,
        Err(e) => return failed(9, NAME, e),
    };
    let witness_match = witness == w.value && witness > 0.0;
    outcome(
        9,
        NAME,
        worst_gap <= 1e-3 && min_gap >= -1e-9 && gaps_match && witness_match,
        format!(
            "{pairs} feasible pairs, gaps in [{min_gap:.3e}, {worst_gap:.3e}], qutrit gaps match fixtures: {gaps_match}, witness {witness:.6e} matches: {witness_match}"
        ),
    )
}

pub fn qubit_msi_identity(scale: Scale) -> Outcome {
    const NAME: &str = "qubit msi identity";
    let n = scale.samples(10_000);
    let mut worst: f64 = 0.0;
    for seed in 0..n as u64 {
        match random_state(2, seed) {
            Ok(rho) => worst = worst.max((msi(&rho) - 1.0).abs()),
            Err(e) => return failed(10, NAME, e),
        }
    }
    outcome(10, NAME, worst <= 1e-10, format!("{n} qubits, max |msi - 1| {worst:.3e}"))
}
