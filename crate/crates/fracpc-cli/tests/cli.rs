//! End-to-end checks of the command-line surface: flags, exit codes, file
//! formats, config precedence, and divergence handling.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn fracpc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fracpc"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    fracpc()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary should run")
}

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()))
}

#[test]
fn solve_writes_full_precision_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "solve",
            "--problem",
            "exp-linear",
            "--scheme",
            "ppc",
            "--kind",
            "classical",
            "--dt",
            "0.0625",
            "--t-end",
            "1",
            "--out",
            "traj.csv",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = read(&dir.path().join("traj.csv"));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 18, "header plus 17 nodes");
    assert_eq!(lines[0], "t,y1");
    assert!(text.ends_with('\n'));
    assert!(!text.contains('\r'), "LF line endings only");

    // Final value lands near the analytic 16.9726... with the coarse-grid
    // error budget.
    let last: Vec<f64> = lines[17].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(last[0], 1.0);
    assert!((last[1] - 16.972640247326626).abs() < 2e-2);

    // Round trip: re-parsing the 17-significant-digit payload and printing
    // it again reproduces the bytes exactly.
    for line in &lines[1..] {
        for field in line.split(',') {
            let v: f64 = field.parse().unwrap();
            assert_eq!(format!("{v:.16e}"), *field);
        }
    }
}

#[test]
fn solve_validates_span() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "solve",
            "--problem",
            "exp-linear",
            "--dt",
            "0.3",
            "--t-end",
            "1",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("span not an integer multiple of dt"),
        "stderr: {stderr}"
    );
}

#[test]
fn unknown_problem_lists_choices() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["solve", "--problem", "vanished", "--dt", "0.1"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    for id in [
        "exp-linear",
        "cos-riccati",
        "power-rhs",
        "poly-manufactured",
        "gierer-meinhardt",
    ] {
        assert!(stderr.contains(id), "missing '{id}' in: {stderr}");
    }
}

#[test]
fn unknown_flag_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["solve", "--no-such-flag"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scheme_kind_mismatch_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "solve",
            "--problem",
            "power-rhs",
            "--scheme",
            "ab2",
            "--kind",
            "caputo",
            "--alpha",
            "0.5",
            "--dt",
            "0.01",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn divergence_exits_3_with_partial_csv() {
    let dir = tempfile::tempdir().unwrap();
    // 2y + 3 blows past the 1e12 guard well before t = 16.
    let out = run(
        &[
            "solve",
            "--problem",
            "exp-linear",
            "--dt",
            "0.01",
            "--t-end",
            "16",
            "--out",
            "partial.csv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("divergence at step"), "stderr: {stderr}");
    let text = read(&dir.path().join("partial.csv"));
    let rows = text.lines().count();
    assert!(rows > 2, "partial trajectory should hold the finite prefix");
    assert!(
        rows < 1602,
        "partial trajectory must stop before the full span"
    );
}

#[test]
fn gm_report_has_analysis_fields() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "gm", "--alpha", "0.85", "--dt", "0.05", "--t-end", "10", "--out", "gm.csv",
            "--report", "gm.json",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_str(&read(&dir.path().join("gm.json"))).unwrap();
    assert_eq!(report["verdict"], "asymptotically_stable");
    assert_eq!(report["equilibrium"][0], 1.75);
    assert_eq!(report["equilibrium"][1], 1.53125);
    assert_eq!(report["determinant"], 8.0);
    assert!((report["trace"].as_f64().unwrap() - 6.0 / 7.0).abs() < 1e-12);
    assert!((report["threshold_lhs"].as_f64().unwrap() - 392.0 / 9.0).abs() < 1e-9);
    assert!((report["threshold_rhs"].as_f64().unwrap() - 18.3497).abs() < 1e-3);
    assert!(report["eigenvalues"][0]["im"].as_f64().unwrap() > 0.0);
    assert_eq!(report["manifest"]["alpha"], 0.85);
    // trajectory and phase files exist with the right headers
    let traj = read(&dir.path().join("gm.csv"));
    assert!(traj.starts_with("t,y1,y2\n"));
    let phase = read(&dir.path().join("gm-phase.csv"));
    assert!(phase.starts_with("a,h\n"));
}

#[test]
fn gm_verdicts_across_orders() {
    let dir = tempfile::tempdir().unwrap();
    for (alpha, want) in [("0.95", "unstable"), ("1.0", "unstable")] {
        let out = run(
            &[
                "gm", "--alpha", alpha, "--dt", "0.05", "--t-end", "5", "--out", "gm.csv",
                "--report", "gm.json",
            ],
            dir.path(),
        );
        assert!(out.status.success());
        let report: serde_json::Value =
            serde_json::from_str(&read(&dir.path().join("gm.json"))).unwrap();
        assert_eq!(report["verdict"], want, "alpha = {alpha}");
        if alpha == "0.95" {
            let rhs = report["threshold_rhs"].as_f64().unwrap();
            assert!((rhs - 162.4476).abs() < 1e-2);
        }
    }
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("run.conf"),
        "problem=exp-linear\nkind=classical\ndt=0.25\nt-end=1\nout=from-config.csv\n",
    )
    .unwrap();
    // config alone
    let out = run(&["solve", "--config", "run.conf"], dir.path());
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = read(&dir.path().join("from-config.csv"));
    assert_eq!(text.lines().count(), 6, "dt=0.25 over [0,1] has 5 nodes");

    // flag overrides config
    let out = run(
        &[
            "solve",
            "--config",
            "run.conf",
            "--dt",
            "0.125",
            "--out",
            "flag-wins.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let text = read(&dir.path().join("flag-wins.csv"));
    assert_eq!(text.lines().count(), 10, "dt=0.125 over [0,1] has 9 nodes");
}

#[test]
fn config_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.conf"), "problme=exp-linear\n").unwrap();
    let out = run(&["solve", "--config", "bad.conf"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown config key"));
}

#[test]
fn missing_config_file_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["solve", "--config", "absent.conf"], dir.path());
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn plot_scripts_are_emitted_next_to_csvs() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "solve",
            "--problem",
            "cos-riccati",
            "--dt",
            "0.25",
            "--t-end",
            "2",
            "--out",
            "r.csv",
            "--emit-plot-script",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let script = read(&dir.path().join("r.gp"));
    assert!(script.contains("plot \"r.csv\""));
    assert!(script.contains("set datafile separator"));
}

#[test]
fn bench_rejects_bad_table_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["bench", "--table", "7"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    let out = fracpc()
        .args(["bench", "--table", "1", "--out", "b.csv"])
        .env("FRACPC_THREADS", "zero")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FRACPC_THREADS"));
}

#[test]
fn solve_handles_two_species_problem() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "solve",
            "--problem",
            "gierer-meinhardt",
            "--kind",
            "caputo",
            "--alpha",
            "0.85",
            "--dt",
            "0.01",
            "--t-end",
            "4",
            "--out",
            "gm2.csv",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = read(&dir.path().join("gm2.csv"));
    assert!(text.starts_with("t,y1,y2\n"));
    assert_eq!(text.lines().count(), 402);
}

#[test]
fn gm_accepts_parameter_overrides() {
    let dir = tempfile::tempdir().unwrap();
    // trace-zero construction: c = 1.5 with mu = 4, nu = 2 and unit rest.
    let out = run(
        &[
            "gm", "--alpha", "0.5", "--dt", "0.1", "--t-end", "1", "--c", "1.5", "--a0", "1",
            "--h0", "1", "--out", "gm.csv", "--report", "gm.json",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_str(&read(&dir.path().join("gm.json"))).unwrap();
    assert_eq!(report["verdict"], "asymptotically_stable");
    assert_eq!(report["branch"], "oscillatory.trace_zero");
    assert!(report["threshold_lhs"].is_null());
    assert_eq!(report["params"]["c"], 1.5);
}
