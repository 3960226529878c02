//! File output: full-precision CSV, gnuplot script emission, and the JSON
//! stability report.
//!
//! CSV payloads use 17 significant digits (`{:.16e}`), comma separators, a
//! header row, LF line endings, and the `.` decimal separator regardless of
//! locale, so parsing a file back reproduces the in-memory values exactly.

use std::fs;
use std::path::{Path, PathBuf};

use fracpc::model::{Trajectory, UniformGrid};
use fracpc::tables::CellResult;

use crate::CliError;

pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn trajectory_header(dim: usize) -> String {
    let mut header = String::from("t");
    for j in 1..=dim {
        header.push_str(&format!(",y{j}"));
    }
    header
}

/// Trajectory CSV: rows `t,y1[,y2,...]` over the given node states.
pub fn write_states_csv(
    path: &Path,
    grid: &UniformGrid,
    states: &[Vec<f64>],
) -> Result<(), CliError> {
    let dim = states.first().map_or(0, Vec::len);
    let mut out = trajectory_header(dim);
    out.push('\n');
    for (m, y) in states.iter().enumerate() {
        out.push_str(&fmt_float(grid.node(m)));
        for v in y {
            out.push(',');
            out.push_str(&fmt_float(*v));
        }
        out.push('\n');
    }
    write_file(path, &out)
}

pub fn write_trajectory_csv(path: &Path, traj: &Trajectory) -> Result<(), CliError> {
    write_states_csv(path, &traj.grid, &traj.states)
}

/// Phase-plane CSV for two-species trajectories: rows `a,h`.
pub fn write_phase_csv(path: &Path, traj: &Trajectory) -> Result<(), CliError> {
    let mut out = String::from("a,h\n");
    for y in &traj.states {
        out.push_str(&fmt_float(y[0]));
        out.push(',');
        out.push_str(&fmt_float(y[1]));
        out.push('\n');
    }
    write_file(path, &out)
}

/// Benchmark CSV: one row per rerun cell.
pub fn write_bench_csv(path: &Path, results: &[CellResult]) -> Result<(), CliError> {
    let mut out = String::from("method,alpha,dt,max_abs_error,paper_value,ratio\n");
    for r in results {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.cell.method,
            fmt_float(r.cell.alpha),
            fmt_float(r.cell.dt()),
            fmt_float(r.max_abs_error),
            fmt_float(r.cell.paper_value),
            fmt_float(r.ratio),
        ));
    }
    write_file(path, &out)
}

/// Path of the gnuplot script that sits next to a CSV.
pub fn script_path(csv: &Path) -> PathBuf {
    csv.with_extension("gp")
}

/// Line plot of every state column against time.
pub fn write_trajectory_script(csv: &Path, dim: usize) -> Result<(), CliError> {
    let name = csv
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut s = String::new();
    s.push_str("set datafile separator \",\"\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str("set xlabel \"t\"\n");
    let series: Vec<String> = (0..dim)
        .map(|j| format!("\"{name}\" using 1:{} with lines", j + 2))
        .collect();
    s.push_str(&format!("plot {}\n", series.join(", ")));
    write_file(&script_path(csv), &s)
}

/// Phase-plane plot a vs h.
pub fn write_phase_script(csv: &Path) -> Result<(), CliError> {
    let name = csv
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let s = format!(
        "set datafile separator \",\"\nset key autotitle columnhead\nset xlabel \"a\"\nset ylabel \"h\"\nplot \"{name}\" using 1:2 with lines\n"
    );
    write_file(&script_path(csv), &s)
}

/// Log-log scatter of measured error against step size.
pub fn write_bench_script(csv: &Path) -> Result<(), CliError> {
    let name = csv
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let s = format!(
        "set datafile separator \",\"\nset key autotitle columnhead\nset logscale xy\nset xlabel \"dt\"\nset ylabel \"max abs error\"\nplot \"{name}\" using 3:4 with points, \"{name}\" using 3:5 with points\n"
    );
    write_file(&script_path(csv), &s)
}
