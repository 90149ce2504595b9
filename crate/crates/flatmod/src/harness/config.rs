//! Experiment configuration: JSON or `key=value` text, plus CLI overrides.

use crate::error::HarnessError;
use crate::lfr::LfrParams;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

fn default_n() -> usize {
    1000
}
fn default_gammas() -> Vec<f64> {
    vec![2.5]
}
fn default_mus() -> Vec<f64> {
    vec![0.5]
}
fn default_seeds() -> String {
    "0..24".into()
}
fn default_r_grid() -> Vec<f64> {
    grid_f64(0.30, 0.50, 0.01)
}
fn default_r_penalties() -> Vec<u64> {
    (80..=120).step_by(2).collect()
}
fn default_out() -> PathBuf {
    PathBuf::from("out")
}
fn default_parallelism() -> usize {
    1
}
fn default_tau2() -> f64 {
    2.0
}
fn default_average_degree() -> f64 {
    20.0
}
fn default_max_degree() -> u32 {
    50
}
fn default_min_community() -> usize {
    20
}
fn default_max_community() -> usize {
    100
}
fn default_low_cut() -> u32 {
    20
}
fn default_high_cut() -> u32 {
    40
}

pub fn grid_f64(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut k = 0;
    loop {
        let v = lo + k as f64 * step;
        if v > hi + 1e-9 {
            break;
        }
        out.push((v * 100.0).round() / 100.0);
        k += 1;
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_gammas")]
    pub gammas: Vec<f64>,
    #[serde(default = "default_mus")]
    pub mus: Vec<f64>,
    /// Inclusive range `a..b`.
    #[serde(default = "default_seeds")]
    pub seeds: String,
    #[serde(default = "default_r_grid")]
    pub r_grid: Vec<f64>,
    #[serde(default = "default_r_penalties", rename = "R_grid")]
    pub r_penalties: Vec<u64>,
    #[serde(default = "default_out")]
    pub out: PathBuf,
    #[serde(default = "default_parallelism")]
    pub parallelism: usize,
    #[serde(default = "default_tau2")]
    pub tau2: f64,
    #[serde(default = "default_average_degree")]
    pub average_degree: f64,
    #[serde(default = "default_max_degree")]
    pub max_degree: u32,
    #[serde(default = "default_min_community")]
    pub min_community: usize,
    #[serde(default = "default_max_community")]
    pub max_community: usize,
    #[serde(default = "default_low_cut")]
    pub low_cut: u32,
    #[serde(default = "default_high_cut")]
    pub high_cut: u32,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("defaults")
    }
}

impl ExperimentConfig {
    /// Paper-scale settings: seeds 0..1000, full r and R grids. Much slower
    /// than the desk-scale defaults.
    pub fn full_scale(mut self) -> Self {
        self.seeds = "0..1000".into();
        self.r_grid = grid_f64(0.0, 1.0, 0.01);
        self.r_penalties = (0..=200).step_by(2).collect();
        self
    }

    pub fn seed_list(&self) -> Result<Vec<u64>, HarnessError> {
        parse_seeds(&self.seeds)
    }

    pub fn lfr_params(&self, gamma: f64, mu: f64, seed: u64) -> LfrParams {
        LfrParams {
            n: self.n,
            tau1: gamma,
            tau2: self.tau2,
            mu,
            average_degree: self.average_degree,
            max_degree: self.max_degree,
            min_community: self.min_community,
            max_community: self.max_community,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.gammas.is_empty() || self.mus.is_empty() {
            return Err(HarnessError::Config("gammas and mus must be non-empty".into()));
        }
        if self.r_grid.is_empty() && self.r_penalties.is_empty() {
            return Err(HarnessError::Config("both parameter grids are empty".into()));
        }
        if self.r_grid.iter().any(|&r| !(0.0..=1.0).contains(&r)) {
            return Err(HarnessError::Config("r values must lie in [0, 1]".into()));
        }
        self.seed_list()?;
        Ok(())
    }
}

pub fn parse_seeds(spec: &str) -> Result<Vec<u64>, HarnessError> {
    let bad = || HarnessError::Config(format!("bad seed range `{spec}`; expected `a..b` or `a`"));
    if let Some((a, b)) = spec.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        Ok((a..=b).collect())
    } else {
        let s: u64 = spec.trim().parse().map_err(|_| bad())?;
        Ok(vec![s])
    }
}

/// Load a config from JSON (`{...}`) or `key=value` lines. Lists in the
/// key=value form are comma-separated; `seeds` takes `a..b`.
pub fn load_config(text: &str) -> Result<ExperimentConfig, HarnessError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return serde_json::from_str(text).map_err(|e| HarnessError::Config(e.to_string()));
    }
    let mut json = serde_json::Map::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| HarnessError::Config(format!("line {}: expected key=value", idx + 1)))?;
        let key = key.trim();
        let value = value.trim();
        let json_value = match key {
            "gammas" | "mus" | "r_grid" => serde_json::Value::Array(
                value
                    .split(',')
                    .map(|v| parse_json_number(v.trim()))
                    .collect::<Result<_, _>>()?,
            ),
            "R_grid" => serde_json::Value::Array(
                value
                    .split(',')
                    .map(|v| parse_json_number(v.trim()))
                    .collect::<Result<_, _>>()?,
            ),
            "seeds" | "out" => serde_json::Value::String(value.to_string()),
            _ => parse_json_number(value)?,
        };
        json.insert(key.to_string(), json_value);
    }
    serde_json::from_value(serde_json::Value::Object(json))
        .map_err(|e| HarnessError::Config(e.to_string()))
}

fn parse_json_number(value: &str) -> Result<serde_json::Value, HarnessError> {
    serde_json::from_str(value)
        .map_err(|_| HarnessError::Config(format!("bad numeric value `{value}`")))
}
