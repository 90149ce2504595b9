//! Command-line front end: generate benchmark graphs, run clustering,
//! evaluate partitions, sweep parameters, and render reports.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 generation failure.

use clap::{Args, Parser, Subcommand};
use flatmod::error::{HarnessError, LfrError};
use flatmod::graph::load_edge_list;
use flatmod::greedy::{greedy_cluster, write_trace};
use flatmod::harness::report::{report_figures, report_tables};
use flatmod::harness::sweep::{flat_penalty_for_graph, graph_cache_file, rows_from_csv};
use flatmod::harness::{load_config, run_sweep, ExperimentConfig};
use flatmod::lfr;
use flatmod::metrics::{low_high_confusion, mcc, pair_confusion};
use flatmod::partition::{load_membership, write_membership};
use flatmod::scoring::{Resolution, ScoreVariant};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_GENERATION: u8 = 3;

#[derive(Parser)]
#[command(name = "flatmod", version, about = "Community detection with standard and flat modularity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Config file, `key=value` lines or JSON.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Degree power-law exponent override.
    #[arg(long)]
    gamma: Option<f64>,
    /// Mixing parameter override.
    #[arg(long)]
    mu: Option<f64>,
    /// Single seed override.
    #[arg(long)]
    seed: Option<u64>,
    /// Inclusive seed range `a..b`.
    #[arg(long)]
    seeds: Option<String>,
    /// Resolution grid override (repeatable).
    #[arg(long = "r")]
    r_values: Vec<f64>,
    /// Penalty-multiplier grid override (repeatable).
    #[arg(long = "R")]
    penalties: Vec<u64>,
    /// Output directory override.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Paper-scale sweep: seeds 0..1000 and the full parameter grids.
    #[arg(long)]
    full_scale: bool,
}

impl ConfigArgs {
    fn resolve(&self) -> Result<ExperimentConfig, AppError> {
        let mut config = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| AppError::data(format!("{}: {e}", path.display())))?;
                load_config(&text).map_err(AppError::from)?
            }
            None => ExperimentConfig::default(),
        };
        if self.full_scale {
            eprintln!(
                "warning: --full-scale runs {} seeds over the full grids; this takes hours",
                1001
            );
            config = config.full_scale();
        }
        if let Some(gamma) = self.gamma {
            config.gammas = vec![gamma];
        }
        if let Some(mu) = self.mu {
            config.mus = vec![mu];
        }
        if let Some(seed) = self.seed {
            config.seeds = seed.to_string();
        }
        if let Some(seeds) = &self.seeds {
            config.seeds = seeds.clone();
        }
        if !self.r_values.is_empty() {
            config.r_grid = self.r_values.clone();
        }
        if !self.penalties.is_empty() {
            config.r_penalties = self.penalties.clone();
        }
        if let Some(out) = &self.out {
            config.out = out.clone();
        }
        config.validate().map_err(AppError::from)?;
        Ok(config)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate one benchmark graph and write it to the output directory.
    Generate(ConfigArgs),
    /// Cluster an edge-list file with the greedy climb.
    Cluster {
        /// Edge-list file.
        #[arg(long)]
        graph: PathBuf,
        /// `standard` or `flat`.
        #[arg(long)]
        variant: String,
        /// Resolution for the standard variant (two decimals).
        #[arg(long = "r")]
        resolution: Option<f64>,
        /// Penalty for the flat variant, on the sweep scale: the per-pair
        /// penalty is R/n, so the same R is comparable across graphs of the
        /// same order.
        #[arg(long = "R")]
        penalty: Option<u64>,
        /// Partition output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Merge trace output file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Score a found partition against ground truth.
    Eval {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        truth: PathBuf,
        #[arg(long)]
        found: PathBuf,
        #[arg(long, default_value_t = 20)]
        low_cut: u32,
        #[arg(long, default_value_t = 40)]
        high_cut: u32,
    },
    /// Run the parameter sweep and write per-seed and summary CSVs.
    Sweep(ConfigArgs),
    /// Render tables and SVG figures from an existing sweep.
    Report(ConfigArgs),
}

struct AppError {
    code: u8,
    message: String,
}

impl AppError {
    fn usage(message: impl Into<String>) -> Self {
        AppError { code: EXIT_USAGE, message: message.into() }
    }
    fn data(message: impl Into<String>) -> Self {
        AppError { code: EXIT_DATA, message: message.into() }
    }
    fn generation(message: impl Into<String>) -> Self {
        AppError { code: EXIT_GENERATION, message: message.into() }
    }
}

impl From<HarnessError> for AppError {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Config(_) | HarnessError::EmptyInput => AppError::usage(e.to_string()),
            _ => AppError::data(e.to_string()),
        }
    }
}

impl From<LfrError> for AppError {
    fn from(e: LfrError) -> Self {
        match e {
            LfrError::GenerationFailure { .. } => AppError::generation(e.to_string()),
            LfrError::InvalidParams(_) => AppError::usage(e.to_string()),
            _ => AppError::data(e.to_string()),
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, AppError> {
    fs::read_to_string(path).map_err(|e| AppError::data(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Generate(args) => {
            let config = args.resolve()?;
            let gamma = config.gammas[0];
            let mu = config.mus[0];
            let seeds = config.seed_list().map_err(AppError::from)?;
            for seed in seeds {
                let params = config.lfr_params(gamma, mu, seed);
                let instance = lfr::generate(&params).map_err(AppError::from)?;
                let file =
                    |kind: &str| graph_cache_file(&config.out, gamma, mu, seed, kind);
                fs::create_dir_all(file("edges").parent().unwrap())
                    .map_err(|e| AppError::data(e.to_string()))?;
                fs::write(
                    file("edges"),
                    flatmod::graph::write_edge_list(&instance.graph),
                )
                .map_err(|e| AppError::data(e.to_string()))?;
                fs::write(
                    file("truth"),
                    write_membership(&instance.truth.to_partition()),
                )
                .map_err(|e| AppError::data(e.to_string()))?;
                fs::write(file("report"), instance.report.to_text())
                    .map_err(|e| AppError::data(e.to_string()))?;
                print!("{}", instance.report.to_text());
                println!("written={}", file("edges").display());
            }
            Ok(())
        }
        Command::Cluster { graph, variant, resolution, penalty, out, trace } => {
            // validate flags before touching the filesystem so flag mistakes
            // surface as usage errors
            enum Requested {
                Standard(Resolution),
                Flat(u64),
            }
            let requested = match variant.as_str() {
                "standard" => {
                    let r = resolution
                        .ok_or_else(|| AppError::usage("standard variant needs --r"))?;
                    Requested::Standard(Resolution::from_f64(r).ok_or_else(|| {
                        AppError::usage(format!("--r {r} is not a two-decimal value in [0, 1]"))
                    })?)
                }
                "flat" => Requested::Flat(
                    penalty.ok_or_else(|| AppError::usage("flat variant needs --R"))?,
                ),
                other => return Err(AppError::usage(format!("unknown variant `{other}`"))),
            };
            let g = load_edge_list(&read_file(&graph)?)
                .map_err(|e| AppError::data(e.to_string()))?;
            let score_variant = match requested {
                Requested::Standard(r) => ScoreVariant::Standard { r },
                Requested::Flat(r_penalty) => ScoreVariant::Flat {
                    penalty: flat_penalty_for_graph(r_penalty, &g),
                },
            };
            let result = greedy_cluster(&g, score_variant);
            let membership = write_membership(&result.partition);
            match out {
                Some(path) => fs::write(&path, membership)
                    .map_err(|e| AppError::data(format!("{}: {e}", path.display())))?,
                None => print!("{membership}"),
            }
            if let Some(path) = trace {
                fs::write(&path, write_trace(&result.trace))
                    .map_err(|e| AppError::data(format!("{}: {e}", path.display())))?;
            }
            eprintln!(
                "clusters={} merges={} score={:.6}",
                result.partition.cluster_count(),
                result.trace.len(),
                result.score.value()
            );
            Ok(())
        }
        Command::Eval { graph, truth, found, low_cut, high_cut } => {
            let g = load_edge_list(&read_file(&graph)?)
                .map_err(|e| AppError::data(e.to_string()))?;
            let truth = load_membership(&read_file(&truth)?)
                .map_err(|e| AppError::data(e.to_string()))?;
            let found = load_membership(&read_file(&found)?)
                .map_err(|e| AppError::data(e.to_string()))?;
            let all = pair_confusion(&truth, &found).map_err(|e| AppError::data(e.to_string()))?;
            let lowhigh = low_high_confusion(&truth, &found, &g, low_cut, high_cut)
                .map_err(|e| AppError::data(e.to_string()))?;
            println!("tp={} fp={} fn={} tn={}", all.tp, all.fp, all.fn_, all.tn);
            println!("mcc_all={:.6}", mcc(&all));
            println!("mcc_lowhigh={:.6}", mcc(&lowhigh));
            Ok(())
        }
        Command::Sweep(args) => {
            let config = args.resolve()?;
            let outcome = run_sweep(&config).map_err(AppError::from)?;
            for (gamma, mu, seed, reason) in &outcome.skipped {
                eprintln!("skipped gamma={gamma} mu={mu} seed={seed}: {reason}");
            }
            println!(
                "rows={} skipped={} out={}",
                outcome.rows.len(),
                outcome.skipped.len(),
                config.out.display()
            );
            if outcome.rows.is_empty() && !outcome.skipped.is_empty() {
                return Err(AppError::generation("every seed failed to generate"));
            }
            Ok(())
        }
        Command::Report(args) => {
            let config = args.resolve()?;
            let results_path = config.out.join("results.csv");
            let rows = rows_from_csv(&read_file(&results_path)?).map_err(AppError::from)?;
            report_tables(&config.out, &rows).map_err(AppError::from)?;
            report_figures(&config, &rows).map_err(AppError::from)?;
            println!("report written to {}", config.out.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are not usage errors
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
