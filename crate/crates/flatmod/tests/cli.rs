//! End-to-end tests of the `flatmod` binary: subcommands, file formats,
//! and exit codes (0 success, 1 usage, 2 data, 3 generation failure).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn flatmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatmod"))
        .args(args)
        .output()
        .expect("spawn flatmod")
}

fn assert_exit(output: &Output, code: i32) {
    assert_eq!(
        output.status.code(),
        Some(code),
        "stdout:\n{}\nstderr:\n{}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
}

/// Small feasible generator settings: min_community exceeds every possible
/// internal degree, so generation cannot dead-end.
fn small_config(dir: &Path) -> String {
    let path = dir.join("config.txt");
    fs::write(
        &path,
        format!(
            "n=150\nmin_community=30\nmax_community=60\nseeds=0\nr_grid=0.40\nR_grid=20\nout={}\n",
            dir.join("out").display()
        ),
    )
    .unwrap();
    path.display().to_string()
}

#[test]
fn help_and_version_succeed() {
    assert_exit(&flatmod(&["--help"]), 0);
    assert_exit(&flatmod(&["--version"]), 0);
    assert_exit(&flatmod(&["cluster", "--help"]), 0);
}

#[test]
fn usage_errors_exit_1() {
    assert_exit(&flatmod(&[]), 1);
    assert_exit(&flatmod(&["no-such-subcommand"]), 1);
    assert_exit(&flatmod(&["cluster", "--graph", "x", "--variant", "standard"]), 1); // missing --r
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.edges");
    fs::write(&graph, "0 1\n").unwrap();
    let graph = graph.display().to_string();
    assert_exit(&flatmod(&["cluster", "--graph", &graph, "--variant", "mystery", "--r", "1.0"]), 1);
    assert_exit(&flatmod(&["cluster", "--graph", &graph, "--variant", "standard", "--r", "0.405"]), 1);
}

#[test]
fn data_errors_exit_2() {
    assert_exit(
        &flatmod(&["cluster", "--graph", "/no/such/file", "--variant", "flat", "--R", "10"]),
        2,
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.edges");
    fs::write(&bad, "0 0\n").unwrap(); // self-loop
    assert_exit(
        &flatmod(&["cluster", "--graph", &bad.display().to_string(), "--variant", "flat", "--R", "1"]),
        2,
    );
}

#[test]
fn generation_failure_exits_3() {
    // max_degree 50 allows internal degrees up to 25, but no community can
    // exceed 18 vertices: assignment is infeasible for high-degree seeds.
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.txt");
    fs::write(
        &config,
        format!(
            "n=100\nmin_community=10\nmax_community=18\nseeds=0\nout={}\n",
            dir.path().join("out").display()
        ),
    )
    .unwrap();
    let out = flatmod(&["generate", "--config", &config.display().to_string()]);
    assert_exit(&out, 3);
}

#[test]
fn generate_cluster_eval_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let config = small_config(dir.path());

    let out = flatmod(&["generate", "--config", &config]);
    assert_exit(&out, 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("mean_degree="), "report missing: {stdout}");

    let base = dir.path().join("out/graphs/gamma2.5_mu0.5_seed0");
    let edges = format!("{}.edges", base.display());
    let truth = format!("{}.truth", base.display());
    assert!(PathBuf::from(format!("{}.report", base.display())).exists());

    let found = dir.path().join("found.txt").display().to_string();
    let trace = dir.path().join("trace.txt").display().to_string();
    let out = flatmod(&[
        "cluster", "--graph", &edges, "--variant", "standard", "--r", "0.40", "--out", &found,
        "--trace", &trace,
    ]);
    assert_exit(&out, 0);
    let trace_text = fs::read_to_string(&trace).unwrap();
    assert!(trace_text.lines().all(|l| l.split_whitespace().count() == 5));

    let out = flatmod(&["eval", "--graph", &edges, "--truth", &truth, "--found", &found]);
    assert_exit(&out, 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("mcc_all="), "eval output: {stdout}");
    assert!(stdout.contains("mcc_lowhigh="));

    // perfect agreement scores 1
    let out = flatmod(&["eval", "--graph", &edges, "--truth", &truth, "--found", &truth]);
    assert_exit(&out, 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("mcc_all=1.000000"));
}

#[test]
fn sweep_and_report_write_expected_files() {
    let dir = tempfile::tempdir().unwrap();
    let config = small_config(dir.path());

    assert_exit(&flatmod(&["sweep", "--config", &config]), 0);
    let out_dir = dir.path().join("out");
    let results = fs::read_to_string(out_dir.join("results.csv")).unwrap();
    assert!(results.starts_with("gamma,mu,seed,variant,param,mcc_all,mcc_lowhigh\n"));
    assert_eq!(results.lines().count(), 3, "1 seed x (1 r + 1 R) rows:\n{results}");
    assert!(out_dir.join("summary.csv").exists());

    // rerun is byte-identical (resumability over a complete sweep)
    assert_exit(&flatmod(&["sweep", "--config", &config]), 0);
    assert_eq!(fs::read_to_string(out_dir.join("results.csv")).unwrap(), results);

    assert_exit(&flatmod(&["report", "--config", &config]), 0);
    assert!(out_dir.join("table_all_mu0.5.csv").exists());
    assert!(out_dir.join("table_lowhigh_mu0.5.csv").exists());
    let table = fs::read_to_string(out_dir.join("table_all_mu0.5.csv")).unwrap();
    assert!(table.starts_with("gamma,variant,param,q1,median,q3\n"));
    let svgs: Vec<_> = fs::read_dir(&out_dir)
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.path().extension().is_some_and(|x| x == "svg"))
        .collect();
    assert!(!svgs.is_empty(), "report produced no SVG figures");
}

#[test]
fn flag_overrides_replace_config_values() {
    let dir = tempfile::tempdir().unwrap();
    let config = small_config(dir.path());
    let out2 = dir.path().join("out2");
    assert_exit(
        &flatmod(&[
            "sweep", "--config", &config, "--seeds", "1..2", "--r", "0.35", "--R", "24",
            "--R", "30", "--out", &out2.display().to_string(),
        ]),
        0,
    );
    let results = fs::read_to_string(out2.join("results.csv")).unwrap();
    // 2 seeds x (1 r + 2 R) = 6 rows
    assert_eq!(results.lines().count(), 7, "{results}");
    assert!(results.contains(",flat,24,"));
    assert!(results.contains(",flat,30,"));
    assert!(!results.contains(",standard,40,"));
}
