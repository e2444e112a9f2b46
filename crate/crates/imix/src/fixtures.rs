//! Pinned regression constants for the extremality oracles.

use std::path::{Path, PathBuf};

use anyhow::Context;
use imix_core::search::{max_imaginarity_at_mixedness, qutrit_unitary_witness};
use serde::{Deserialize, Serialize};

pub const SEARCH_SEED: u64 = 20_241_016;
pub const SEARCH_BUDGET: usize = 64;
pub const WITNESS_GRID: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapPoint {
    pub mixedness: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub mixedness: f64,
    pub grid_n: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pinned {
    pub search_seed: u64,
    pub search_budget: usize,
    /// Qutrit gaps 2 sqrt(1-s) - max M_l1 for s below 2/3.
    pub qutrit_gaps: Vec<GapPoint>,
    pub witness: Witness,
}

pub fn infeasible_mixedness_grid() -> Vec<f64> {
    (0..=6).map(|k| k as f64 / 10.0).collect()
}

pub fn qutrit_gap(s: f64, budget: usize, seed: u64) -> anyhow::Result<f64> {
    Ok(max_imaginarity_at_mixedness(3, s, budget, seed)?.gap)
}

impl Pinned {
    /// Runs the oracles from scratch.
    pub fn compute() -> anyhow::Result<Self> {
        let qutrit_gaps = infeasible_mixedness_grid()
            .into_iter()
            .map(|mixedness| {
                Ok(GapPoint {
                    mixedness,
                    gap: qutrit_gap(mixedness, SEARCH_BUDGET, SEARCH_SEED)?,
                })
            })
            .collect::<anyhow::Result<_>>()?;
        let mixedness = 2.0 / 3.0;
        Ok(Pinned {
            search_seed: SEARCH_SEED,
            search_budget: SEARCH_BUDGET,
            qutrit_gaps,
            witness: Witness {
                mixedness,
                grid_n: WITNESS_GRID,
                value: qutrit_unitary_witness(mixedness, WITNESS_GRID)?,
            },
        })
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn save(&self, path: &Path) -> anyhow::Result<()> {
        std::fs::write(path, crate::format::to_pretty_json(self)).with_context(|| format!("writing {}", path.display()))
    }
}

/// `fixtures/pinned.json` at the workspace root.
pub fn default_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/pinned.json")
}
