//! Parameter sweeps over generated benchmark graphs.
//!
//! Each (gamma, mu, seed) graph is generated once and cached on disk under
//! `<out>/graphs/`; every r and R value reuses the cached graph. Results are
//! keyed by (gamma, mu, seed, variant, param), so rerunning a partially
//! completed sweep only computes missing cells. Workers share nothing
//! mutable and rows are sorted before writing, which makes the output files
//! independent of the worker count.

use super::config::ExperimentConfig;
use super::quartiles;
use crate::error::HarnessError;
use crate::graph::{load_edge_list, write_edge_list, Graph};
use crate::greedy::greedy_cluster;
use crate::lfr;
use crate::metrics::{low_high_confusion, mcc, pair_confusion};
use crate::partition::{load_membership, write_membership, Partition};
use crate::scoring::{Resolution, ScoreVariant};
use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VariantKey {
    Standard,
    Flat,
}

impl VariantKey {
    pub fn as_str(self) -> &'static str {
        match self {
            VariantKey::Standard => "standard",
            VariantKey::Flat => "flat",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "standard" => Some(VariantKey::Standard),
            "flat" => Some(VariantKey::Flat),
            _ => None,
        }
    }
}

/// One sweep cell: a clustering run and its evaluation. `param` holds
/// resolution hundredths for the standard variant and the penalty multiplier
/// for the flat variant.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub gamma: f64,
    pub mu: f64,
    pub seed: u64,
    pub variant: VariantKey,
    pub param: u64,
    pub mcc_all: f64,
    pub mcc_lowhigh: f64,
}

/// Canonical float text used in CSV cells and cache file names.
pub fn format_float(v: f64) -> String {
    format!("{v}")
}

pub type RowKey = (String, String, u64, VariantKey, u64);

impl Row {
    pub fn key(&self) -> RowKey {
        (
            format_float(self.gamma),
            format_float(self.mu),
            self.seed,
            self.variant,
            self.param,
        )
    }

    pub fn param_text(&self) -> String {
        match self.variant {
            VariantKey::Standard => format!("{:.2}", self.param as f64 / 100.0),
            VariantKey::Flat => self.param.to_string(),
        }
    }

    pub fn score_variant(&self, graph: &Graph) -> ScoreVariant {
        score_variant_for(self.variant, self.param, graph)
    }
}

/// Scale a swept flat penalty `R` to the exact score's integer penalty for
/// a concrete graph. The sweep parameter fixes the per-pair penalty at
/// `R/n`, so it is comparable across graphs of the same order regardless of
/// how many edges each seed realized; the scoring layer's per-pair cost is
/// `penalty/2L`, hence `penalty = round(R·2L/n)`.
pub fn flat_penalty_for_graph(r_penalty: u64, graph: &Graph) -> u64 {
    let two_l = graph.two_l();
    let n = graph.vertex_count() as u64;
    (r_penalty * two_l + n / 2) / n
}

/// Map a sweep cell's parameter to the `ScoreVariant` to run on `graph`:
/// resolution hundredths for the standard variant, the `R/n`-scaled penalty
/// for the flat variant.
pub fn score_variant_for(variant: VariantKey, param: u64, graph: &Graph) -> ScoreVariant {
    match variant {
        VariantKey::Standard => ScoreVariant::Standard {
            r: Resolution::from_hundredths(param as u32).expect("stored resolution"),
        },
        VariantKey::Flat => ScoreVariant::Flat {
            penalty: flat_penalty_for_graph(param, graph),
        },
    }
}

pub const RESULTS_HEADER: &str = "gamma,mu,seed,variant,param,mcc_all,mcc_lowhigh";

pub fn rows_to_csv(rows: &[Row]) -> String {
    let mut out = String::from(RESULTS_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{:.6},{:.6}",
            format_float(r.gamma),
            format_float(r.mu),
            r.seed,
            r.variant.as_str(),
            r.param_text(),
            r.mcc_all,
            r.mcc_lowhigh
        );
    }
    out
}

pub fn rows_from_csv(text: &str) -> Result<Vec<Row>, HarnessError> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if idx == 0 || line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(HarnessError::Data(format!(
                "results line {}: expected 7 fields",
                idx + 1
            )));
        }
        let bad = |what: &str| HarnessError::Data(format!("results line {}: bad {what}", idx + 1));
        let variant = VariantKey::parse(fields[3]).ok_or_else(|| bad("variant"))?;
        let param = match variant {
            VariantKey::Standard => {
                let r: f64 = fields[4].parse().map_err(|_| bad("param"))?;
                (r * 100.0).round() as u64
            }
            VariantKey::Flat => fields[4].parse().map_err(|_| bad("param"))?,
        };
        rows.push(Row {
            gamma: fields[0].parse().map_err(|_| bad("gamma"))?,
            mu: fields[1].parse().map_err(|_| bad("mu"))?,
            seed: fields[2].parse().map_err(|_| bad("seed"))?,
            variant,
            param,
            mcc_all: fields[5].parse().map_err(|_| bad("mcc_all"))?,
            mcc_lowhigh: fields[6].parse().map_err(|_| bad("mcc_lowhigh"))?,
        });
    }
    Ok(rows)
}

fn sort_rows(rows: &mut [Row]) {
    rows.sort_by(|a, b| {
        a.gamma
            .total_cmp(&b.gamma)
            .then(a.mu.total_cmp(&b.mu))
            .then(a.seed.cmp(&b.seed))
            .then(a.variant.cmp(&b.variant))
            .then(a.param.cmp(&b.param))
    });
}

#[derive(Debug)]
pub struct SweepOutcome {
    pub rows: Vec<Row>,
    /// (gamma, mu, seed, reason) for seeds whose generation failed.
    pub skipped: Vec<(f64, f64, u64, String)>,
}

/// Cache path for one generated graph's `kind` file (`edges`, `truth`, or
/// `report`). The extension is appended textually because mu values contain
/// a dot that `Path::with_extension` would truncate at.
pub fn graph_cache_file(out: &Path, gamma: f64, mu: f64, seed: u64, kind: &str) -> PathBuf {
    out.join("graphs").join(format!(
        "gamma{}_mu{}_seed{seed}.{kind}",
        format_float(gamma),
        format_float(mu)
    ))
}

/// Load the cached (graph, truth) for one cell, generating and caching it on
/// a miss.
pub fn load_or_generate(
    config: &ExperimentConfig,
    gamma: f64,
    mu: f64,
    seed: u64,
) -> Result<(Graph, Partition), HarnessError> {
    let edges_path = graph_cache_file(&config.out, gamma, mu, seed, "edges");
    let truth_path = graph_cache_file(&config.out, gamma, mu, seed, "truth");
    if edges_path.exists() && truth_path.exists() {
        let graph = load_edge_list(&fs::read_to_string(&edges_path)?)
            .map_err(|e| HarnessError::Data(format!("{}: {e}", edges_path.display())))?;
        let truth = load_membership(&fs::read_to_string(&truth_path)?)
            .map_err(|e| HarnessError::Data(format!("{}: {e}", truth_path.display())))?;
        return Ok((graph, truth));
    }
    let params = config.lfr_params(gamma, mu, seed);
    let instance = lfr::generate(&params).map_err(|e| HarnessError::Data(e.to_string()))?;
    fs::create_dir_all(edges_path.parent().unwrap())?;
    let truth = instance.truth.to_partition();
    fs::write(&edges_path, write_edge_list(&instance.graph))?;
    fs::write(&truth_path, write_membership(&truth))?;
    fs::write(
        graph_cache_file(&config.out, gamma, mu, seed, "report"),
        instance.report.to_text(),
    )?;
    Ok((instance.graph, truth))
}

struct Task {
    gamma: f64,
    mu: f64,
    seed: u64,
    resolutions: Vec<u64>,
    penalties: Vec<u64>,
}

enum TaskResult {
    Rows(Vec<Row>),
    Skipped(f64, f64, u64, String),
}

fn run_task(config: &ExperimentConfig, task: &Task) -> TaskResult {
    let (graph, truth) = match load_or_generate(config, task.gamma, task.mu, task.seed) {
        Ok(pair) => pair,
        Err(e) => return TaskResult::Skipped(task.gamma, task.mu, task.seed, e.to_string()),
    };
    let mut rows = Vec::new();
    let mut push = |variant: VariantKey, param: u64| {
        let score_variant = score_variant_for(variant, param, &graph);
        let found = greedy_cluster(&graph, score_variant).partition;
        let all = pair_confusion(&truth, &found).expect("same vertex set");
        let lowhigh = low_high_confusion(&truth, &found, &graph, config.low_cut, config.high_cut)
            .expect("same vertex set");
        rows.push(Row {
            gamma: task.gamma,
            mu: task.mu,
            seed: task.seed,
            variant,
            param,
            mcc_all: mcc(&all),
            mcc_lowhigh: mcc(&lowhigh),
        });
    };
    for &p in &task.resolutions {
        push(VariantKey::Standard, p);
    }
    for &p in &task.penalties {
        push(VariantKey::Flat, p);
    }
    TaskResult::Rows(rows)
}

// Fixed-order work queue: results land at their task index regardless of
// which worker ran them.
fn run_tasks(config: &ExperimentConfig, tasks: Vec<Task>) -> Vec<TaskResult> {
    let workers = config.parallelism.max(1).min(tasks.len().max(1));
    if workers <= 1 {
        return tasks.iter().map(|t| run_task(config, t)).collect();
    }
    let next = AtomicUsize::new(0);
    let results: Vec<Mutex<Option<TaskResult>>> =
        tasks.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                if idx >= tasks.len() {
                    break;
                }
                let result = run_task(config, &tasks[idx]);
                *results[idx].lock().unwrap() = Some(result);
            });
        }
    });
    results
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("task completed"))
        .collect()
}

/// Run the sweep described by `config`, writing `results.csv`,
/// `summary.csv`, and (when seeds fail) `skipped.txt` under `config.out`.
pub fn run_sweep(config: &ExperimentConfig) -> Result<SweepOutcome, HarnessError> {
    config.validate()?;
    fs::create_dir_all(&config.out)?;
    let results_path = config.out.join("results.csv");
    let existing: Vec<Row> = if results_path.exists() {
        rows_from_csv(&fs::read_to_string(&results_path)?)?
    } else {
        Vec::new()
    };
    let have: HashSet<RowKey> = existing.iter().map(Row::key).collect();

    let resolutions: Vec<u64> = config
        .r_grid
        .iter()
        .map(|&r| (r * 100.0).round() as u64)
        .collect();
    let seeds = config.seed_list()?;

    let mut tasks = Vec::new();
    for &gamma in &config.gammas {
        for &mu in &config.mus {
            for &seed in &seeds {
                let key = |variant, param| {
                    (format_float(gamma), format_float(mu), seed, variant, param)
                };
                let missing_r: Vec<u64> = resolutions
                    .iter()
                    .copied()
                    .filter(|&p| !have.contains(&key(VariantKey::Standard, p)))
                    .collect();
                let missing_pen: Vec<u64> = config
                    .r_penalties
                    .iter()
                    .copied()
                    .filter(|&p| !have.contains(&key(VariantKey::Flat, p)))
                    .collect();
                if missing_r.is_empty() && missing_pen.is_empty() {
                    continue;
                }
                tasks.push(Task {
                    gamma,
                    mu,
                    seed,
                    resolutions: missing_r,
                    penalties: missing_pen,
                });
            }
        }
    }

    let mut rows = existing;
    let mut skipped = Vec::new();
    for result in run_tasks(config, tasks) {
        match result {
            TaskResult::Rows(mut new_rows) => rows.append(&mut new_rows),
            TaskResult::Skipped(gamma, mu, seed, reason) => skipped.push((gamma, mu, seed, reason)),
        }
    }
    sort_rows(&mut rows);
    rows.dedup_by_key(|r| r.key());

    fs::write(&results_path, rows_to_csv(&rows))?;
    fs::write(config.out.join("summary.csv"), summary_csv(&rows)?)?;
    if !skipped.is_empty() {
        let mut log = String::new();
        for (gamma, mu, seed, reason) in &skipped {
            let _ = writeln!(
                log,
                "gamma={} mu={} seed={seed} skipped: {reason}",
                format_float(*gamma),
                format_float(*mu)
            );
        }
        fs::write(config.out.join("skipped.txt"), log)?;
    }
    Ok(SweepOutcome { rows, skipped })
}

/// Per-(gamma, mu, variant, param) order-statistic summary of the per-seed
/// MCC samples.
pub fn summary_csv(rows: &[Row]) -> Result<String, HarnessError> {
    let mut out = String::from(
        "gamma,mu,variant,param,seeds,q1_all,median_all,q3_all,q1_lowhigh,median_lowhigh,q3_lowhigh\n",
    );
    for group in group_rows(rows) {
        let all: Vec<f64> = group.iter().map(|r| r.mcc_all).collect();
        let lowhigh: Vec<f64> = group.iter().map(|r| r.mcc_lowhigh).collect();
        let (a1, a2, a3) = quartiles(&all)?;
        let (l1, l2, l3) = quartiles(&lowhigh)?;
        let first = group[0];
        let _ = writeln!(
            out,
            "{},{},{},{},{},{a1:.6},{a2:.6},{a3:.6},{l1:.6},{l2:.6},{l3:.6}",
            format_float(first.gamma),
            format_float(first.mu),
            first.variant.as_str(),
            first.param_text(),
            group.len()
        );
    }
    Ok(out)
}

/// Consecutive runs of sorted rows sharing (gamma, mu, variant, param).
pub fn group_rows(rows: &[Row]) -> Vec<Vec<&Row>> {
    let mut sorted: Vec<&Row> = rows.iter().collect();
    sorted.sort_by(|a, b| {
        a.gamma
            .total_cmp(&b.gamma)
            .then(a.mu.total_cmp(&b.mu))
            .then(a.variant.cmp(&b.variant))
            .then(a.param.cmp(&b.param))
            .then(a.seed.cmp(&b.seed))
    });
    let mut groups: Vec<Vec<&Row>> = Vec::new();
    for row in sorted {
        let same = groups.last().is_some_and(|g: &Vec<&Row>| {
            let head = g[0];
            head.gamma == row.gamma
                && head.mu == row.mu
                && head.variant == row.variant
                && head.param == row.param
        });
        if same {
            groups.last_mut().unwrap().push(row);
        } else {
            groups.push(vec![row]);
        }
    }
    groups
}
