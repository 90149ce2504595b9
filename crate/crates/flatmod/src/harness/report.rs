//! Tables and figures derived from sweep results.
//!
//! Best parameters maximize the median all-pairs MCC per (gamma, mu,
//! variant); ties go to the smaller parameter value. Tables report
//! order-statistic quartiles at the best parameter, over all pairs and over
//! low/high-degree pairs. Figures are sweep curves, a standard-vs-flat
//! scatter per gamma, and degree-bucket heatmaps for the seeds realizing
//! the quartiles of the standard-variant score.

use super::config::ExperimentConfig;
use super::quartiles;
use super::svg;
use super::sweep::{format_float, group_rows, load_or_generate, Row, VariantKey};
use crate::error::HarnessError;
use crate::greedy::greedy_cluster;
use crate::metrics::{bucket_mcc_matrix, degree_buckets};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BestParam {
    pub gamma: f64,
    pub mu: f64,
    pub variant: VariantKey,
    pub param: u64,
    pub median: f64,
}

/// Per (gamma, mu, variant): the parameter with the greatest median MCC over
/// all pairs, smaller parameter on ties.
pub fn best_params(rows: &[Row]) -> Result<Vec<BestParam>, HarnessError> {
    let mut best: Vec<BestParam> = Vec::new();
    for group in group_rows(rows) {
        let samples: Vec<f64> = group.iter().map(|r| r.mcc_all).collect();
        let (_, median, _) = quartiles(&samples)?;
        let head = group[0];
        let candidate = BestParam {
            gamma: head.gamma,
            mu: head.mu,
            variant: head.variant,
            param: head.param,
            median,
        };
        match best.iter_mut().find(|b| {
            b.gamma == candidate.gamma && b.mu == candidate.mu && b.variant == candidate.variant
        }) {
            Some(current) => {
                if candidate.median > current.median
                    || (candidate.median == current.median && candidate.param < current.param)
                {
                    *current = candidate;
                }
            }
            None => best.push(candidate),
        }
    }
    Ok(best)
}

fn param_text(variant: VariantKey, param: u64) -> String {
    match variant {
        VariantKey::Standard => format!("{:.2}", param as f64 / 100.0),
        VariantKey::Flat => param.to_string(),
    }
}

fn rows_at<'a>(rows: &'a [Row], b: &BestParam) -> Vec<&'a Row> {
    rows.iter()
        .filter(|r| {
            r.gamma == b.gamma && r.mu == b.mu && r.variant == b.variant && r.param == b.param
        })
        .collect()
}

/// Write `table_all_mu<mu>.csv` and `table_lowhigh_mu<mu>.csv` per mixing
/// value: quartiles at the best parameter, columns
/// `gamma,variant,param,q1,median,q3`.
pub fn report_tables(out: &Path, rows: &[Row]) -> Result<(), HarnessError> {
    if rows.is_empty() {
        return Err(HarnessError::MissingResults("no sweep rows".into()));
    }
    let best = best_params(rows)?;
    let mut mus: Vec<f64> = best.iter().map(|b| b.mu).collect();
    mus.sort_by(f64::total_cmp);
    mus.dedup();

    for &mu in &mus {
        for (file_tag, pick) in [
            ("all", true),
            ("lowhigh", false),
        ] {
            let mut table = String::from("gamma,variant,param,q1,median,q3\n");
            let mut entries: Vec<&BestParam> = best.iter().filter(|b| b.mu == mu).collect();
            entries.sort_by(|a, b| a.gamma.total_cmp(&b.gamma).then(a.variant.cmp(&b.variant)));
            for b in entries {
                let samples: Vec<f64> = rows_at(rows, b)
                    .iter()
                    .map(|r| if pick { r.mcc_all } else { r.mcc_lowhigh })
                    .collect();
                let (q1, median, q3) = quartiles(&samples)?;
                let _ = writeln!(
                    table,
                    "{},{},{},{q1:.6},{median:.6},{q3:.6}",
                    format_float(b.gamma),
                    b.variant.as_str(),
                    param_text(b.variant, b.param)
                );
            }
            fs::write(
                out.join(format!("table_{file_tag}_mu{}.csv", format_float(mu))),
                table,
            )?;
        }
    }
    Ok(())
}

/// Write sweep-curve, scatter, and heatmap SVGs under `config.out`.
pub fn report_figures(config: &ExperimentConfig, rows: &[Row]) -> Result<(), HarnessError> {
    if rows.is_empty() {
        return Err(HarnessError::MissingResults("no sweep rows".into()));
    }
    let out = &config.out;
    fs::create_dir_all(out)?;
    let best = best_params(rows)?;

    let mut mus: Vec<f64> = rows.iter().map(|r| r.mu).collect();
    mus.sort_by(f64::total_cmp);
    mus.dedup();
    let mut gammas: Vec<f64> = rows.iter().map(|r| r.gamma).collect();
    gammas.sort_by(f64::total_cmp);
    gammas.dedup();

    // (a) median curves with quartile bands, MCC vs parameter, per variant
    for &mu in &mus {
        for variant in [VariantKey::Standard, VariantKey::Flat] {
            let mut series = Vec::new();
            for &gamma in &gammas {
                let mut points = Vec::new();
                for group in group_rows(rows) {
                    let head = group[0];
                    if head.gamma != gamma || head.mu != mu || head.variant != variant {
                        continue;
                    }
                    let samples: Vec<f64> = group.iter().map(|r| r.mcc_all).collect();
                    let (q1, median, q3) = quartiles(&samples)?;
                    let x = match variant {
                        VariantKey::Standard => head.param as f64 / 100.0,
                        VariantKey::Flat => head.param as f64,
                    };
                    points.push((x, q1, median, q3));
                }
                if !points.is_empty() {
                    points.sort_by(|a, b| a.0.total_cmp(&b.0));
                    series.push(svg::Series {
                        label: format!("gamma={}", format_float(gamma)),
                        points,
                    });
                }
            }
            if series.is_empty() {
                continue; // e.g. an empty parameter grid for this variant
            }
            let (x_label, tag) = match variant {
                VariantKey::Standard => ("resolution r", "standard"),
                VariantKey::Flat => ("penalty multiplier R", "flat"),
            };
            let title = format!("MCC vs {x_label}, mu={}", format_float(mu));
            fs::write(
                out.join(format!("fig_sweep_{tag}_mu{}.svg", format_float(mu))),
                svg::sweep_curve_svg(&title, x_label, &series),
            )?;
        }
    }

    // (b) per-seed scatter: standard (x) vs flat (y) at the best parameters
    for &mu in &mus {
        for &gamma in &gammas {
            let find = |variant| {
                best.iter()
                    .find(|b| b.gamma == gamma && b.mu == mu && b.variant == variant)
            };
            let (Some(bs), Some(bf)) = (find(VariantKey::Standard), find(VariantKey::Flat)) else {
                continue;
            };
            let std_rows = rows_at(rows, bs);
            let flat_rows = rows_at(rows, bf);
            let mut points = Vec::new();
            for r in &std_rows {
                if let Some(f) = flat_rows.iter().find(|f| f.seed == r.seed) {
                    points.push((r.mcc_all, f.mcc_all));
                }
            }
            if points.is_empty() {
                continue;
            }
            let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
            let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
            let (_, x_median, _) = quartiles(&xs)?;
            let (_, y_median, _) = quartiles(&ys)?;
            let title = format!(
                "standard (r={}) vs flat (R={}), gamma={}",
                param_text(VariantKey::Standard, bs.param),
                bf.param,
                format_float(gamma)
            );
            fs::write(
                out.join(format!(
                    "fig_scatter_gamma{}_mu{}.svg",
                    format_float(gamma),
                    format_float(mu)
                )),
                svg::scatter_svg(&title, &points, x_median, y_median),
            )?;
        }
    }

    // (c) degree-bucket heatmaps for the seeds realizing the standard
    // variant's quartile scores
    for &mu in &mus {
        for &gamma in &gammas {
            let Some(bs) = best
                .iter()
                .find(|b| b.gamma == gamma && b.mu == mu && b.variant == VariantKey::Standard)
            else {
                continue;
            };
            let bf = best
                .iter()
                .find(|b| b.gamma == gamma && b.mu == mu && b.variant == VariantKey::Flat);
            let std_rows = rows_at(rows, bs);
            let samples: Vec<f64> = std_rows.iter().map(|r| r.mcc_all).collect();
            let (q1, median, q3) = quartiles(&samples)?;
            for (tag, value) in [("q1", q1), ("median", median), ("q3", q3)] {
                let seed = std_rows
                    .iter()
                    .find(|r| r.mcc_all == value)
                    .map(|r| r.seed)
                    .ok_or_else(|| {
                        HarnessError::MissingResults(format!("no seed realizes {tag}"))
                    })?;
                let (graph, truth) = load_or_generate(config, gamma, mu, seed)?;
                let buckets = degree_buckets(&graph, 100);
                let mut jobs = vec![(VariantKey::Standard, bs.param)];
                if let Some(bf) = bf {
                    jobs.push((VariantKey::Flat, bf.param));
                }
                for (variant, param) in jobs {
                    let score_variant = Row {
                        gamma,
                        mu,
                        seed,
                        variant,
                        param,
                        mcc_all: 0.0,
                        mcc_lowhigh: 0.0,
                    }
                    .score_variant(&graph);
                    let found = greedy_cluster(&graph, score_variant).partition;
                    let matrix = bucket_mcc_matrix(&truth, &found, &graph, &buckets)
                        .map_err(|e| HarnessError::Data(e.to_string()))?;
                    let stem = format!(
                        "heatmap_{}_gamma{}_mu{}_{tag}_seed{seed}",
                        variant.as_str(),
                        format_float(gamma),
                        format_float(mu)
                    );
                    let title = format!(
                        "bucket MCC, {} {}, gamma={}, seed {seed} ({tag})",
                        variant.as_str(),
                        param_text(variant, param),
                        format_float(gamma)
                    );
                    fs::write(out.join(format!("{stem}.svg")), svg::heatmap_svg(&title, &matrix))?;
                    fs::write(out.join(format!("{stem}.csv")), matrix.to_csv())?;
                }
            }
        }
    }
    Ok(())
}
