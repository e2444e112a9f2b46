//! On-disk formats: matrix JSON, report JSON and CSV rows.
//!
//! Matrices are `{"dim": d, "entries": [[[re, im], ...], ...]}`, row-major.
//! An entry may also be `[re]` or a bare number, meaning im = 0.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context};
use imix_core::search::SearchResult;
use imix_core::states::{validate, DensityMatrix};
use imix_core::{CMatrix, Complex64};
use serde::{Deserialize, Deserializer, Serialize};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entry(pub Complex64);

impl Serialize for Entry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Parts(Vec<f64>),
        }
        match Raw::deserialize(d)? {
            Raw::Number(re) => Ok(Entry(Complex64::new(re, 0.0))),
            Raw::Parts(p) => match p.as_slice() {
                [re] => Ok(Entry(Complex64::new(*re, 0.0))),
                [re, im] => Ok(Entry(Complex64::new(*re, *im))),
                _ => Err(serde::de::Error::invalid_length(p.len(), &"[re] or [re, im]")),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<Vec<Entry>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        MatrixJson {
            dim: m.dim(),
            entries: m.rows().map(|row| row.iter().map(|&z| Entry(z)).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> anyhow::Result<CMatrix> {
        if self.entries.len() != self.dim {
            bail!("\"dim\" is {} but there are {} rows", self.dim, self.entries.len());
        }
        let rows: Vec<Vec<Complex64>> = self.entries.iter().map(|r| r.iter().map(|e| e.0).collect()).collect();
        Ok(CMatrix::from_rows(&rows)?)
    }

    pub fn to_state(&self) -> anyhow::Result<DensityMatrix> {
        Ok(validate(self.to_matrix()?)?)
    }
}

pub fn state_to_json(rho: &DensityMatrix) -> String {
    serde_json::to_string(&MatrixJson::from_matrix(rho.matrix())).expect("matrix JSON is always serializable")
}

/// Reads a state from matrix JSON, or from any object carrying one under
/// `best_state` (the output of `search`).
pub fn parse_state(text: &str) -> anyhow::Result<DensityMatrix> {
    let value: serde_json::Value = serde_json::from_str(text).context("input is not valid JSON")?;
    let matrix = match value.get("best_state") {
        Some(inner) => inner.clone(),
        None => value,
    };
    let parsed: MatrixJson = serde_json::from_value(matrix).context("input is not a matrix object")?;
    parsed.to_state()
}

pub fn read_state(path: &Path) -> anyhow::Result<DensityMatrix> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_state(&text).with_context(|| format!("in {}", path.display()))
}

/// 17 significant digits, enough to round-trip every double.
pub fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv_row(values: &[f64]) -> String {
    let mut line = String::new();
    for (k, v) in values.iter().enumerate() {
        if k > 0 {
            line.push(',');
        }
        line.push_str(&csv_float(*v));
    }
    line
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchJson {
    pub dim: usize,
    pub mixedness: f64,
    pub budget: usize,
    pub seed: u64,
    pub best_m_l1: f64,
    pub bound: f64,
    pub gap: f64,
    pub evals: u64,
    pub best_state: MatrixJson,
}

impl SearchJson {
    pub fn new(result: &SearchResult, mixedness: f64, budget: usize) -> Self {
        SearchJson {
            dim: result.best_state.dim(),
            mixedness,
            budget,
            seed: result.seed,
            best_m_l1: result.best_m_l1,
            bound: result.bound,
            gap: result.gap,
            evals: result.evals,
            best_state: MatrixJson::from_matrix(result.best_state.matrix()),
        }
    }
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn csv_table<I: IntoIterator<Item = Vec<f64>>>(header: &str, rows: I) -> String {
    let mut out = String::new();
    writeln!(out, "{header}").unwrap();
    for row in rows {
        writeln!(out, "{}", csv_row(&row)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use imix_core::states::random_state;

    #[test]
    fn accepts_missing_imaginary_parts() {
        let rho = parse_state(r#"{"dim": 2, "entries": [[0.5, [0]], [[0.0], [0.5, 0.0]]]}"#).unwrap();
        assert_eq!(rho, DensityMatrix::maximally_mixed(2).unwrap());
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let rho = random_state(4, 9).unwrap();
        assert_eq!(parse_state(&state_to_json(&rho)).unwrap(), rho);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(parse_state(r#"{"dim": 3, "entries": [[1, 0], [0, 0]]}"#).is_err());
        assert!(parse_state(r#"{"dim": 2, "entries": [[1, 0], [0]]}"#).is_err());
        assert!(parse_state(r#"{"dim": 2, "entries": [[[1, 0, 0], 0], [0, 0]]}"#).is_err());
        assert!(parse_state(r#"{"dim": 2, "entries": [[1, 0], [0, 0]], "extra": 1}"#).is_err());
        assert!(parse_state("[1, 2]").is_err());
    }

    #[test]
    fn csv_floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0] {
            let s = csv_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(csv_float(0.5), "5.0000000000000000e-1");
        assert_eq!(csv_row(&[1.0, -0.25]), "1.0000000000000000e0,-2.5000000000000000e-1");
    }
}
