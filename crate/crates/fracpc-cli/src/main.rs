//! Command-line front end: trajectory solves, the reference-table benchmark
//! harness, and the activator-inhibitor case-study report.
//!
//! Exit codes: 0 success, 2 usage/validation, 3 numerical divergence, 4 I/O.

mod bench;
mod manifest;
mod output;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use fracpc::gm;
use fracpc::model::{make_grid, DerivativeKind, SolverConfig, UniformGrid};
use fracpc::problems::{builtin, ProblemParams};
use fracpc::schemes::{scheme_by_name, solve};

use manifest::{resolve, resolve_required, ConfigFile, GmParamsOut, RunManifest};

/// CLI failure with its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad config, invalid combinations (exit 2).
    Usage(String),
    /// Numerical divergence or overflow (exit 3).
    Numeric(String),
    /// Filesystem trouble (exit 4).
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Numeric(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<fracpc::Error> for CliError {
    fn from(e: fracpc::Error) -> Self {
        match e {
            fracpc::Error::Divergence { .. } | fracpc::Error::Overflow(_) => {
                CliError::Numeric(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "fracpc",
    version,
    about = "Predictor-corrector solvers for classical and fractional ODEs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a builtin problem and write the trajectory CSV.
    Solve(SolveArgs),
    /// Rerun a reference error table and write the comparison CSV.
    Bench(BenchArgs),
    /// Activator-inhibitor case study: stability report plus trajectory and
    /// phase-plane CSVs.
    Gm(GmArgs),
}

/// Overrides for the activator-inhibitor constants (defaults are the case
/// study's values).
#[derive(Args, Debug, Clone, Copy)]
struct GmOverrides {
    #[arg(long)]
    rho0: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    cprime: Option<f64>,
    #[arg(long)]
    rhoprime: Option<f64>,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    a0: Option<f64>,
    #[arg(long)]
    h0: Option<f64>,
}

impl GmOverrides {
    fn apply(&self, config: &ConfigFile) -> Result<gm::GmParams, CliError> {
        let d = gm::GmParams::default();
        Ok(gm::GmParams {
            rho0: resolve(self.rho0, config, "rho0", d.rho0)?,
            rho: resolve(self.rho, config, "rho", d.rho)?,
            c: resolve(self.c, config, "c", d.c)?,
            mu: resolve(self.mu, config, "mu", d.mu)?,
            cprime: resolve(self.cprime, config, "cprime", d.cprime)?,
            rhoprime: resolve(self.rhoprime, config, "rhoprime", d.rhoprime)?,
            nu: resolve(self.nu, config, "nu", d.nu)?,
            a0: resolve(self.a0, config, "a0", d.a0)?,
            h0: resolve(self.h0, config, "h0", d.h0)?,
        })
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Builtin problem id.
    #[arg(long)]
    problem: Option<String>,
    /// Stepping scheme: ppc | ias | as | ab2.
    #[arg(long)]
    scheme: Option<String>,
    /// Derivative kind: classical | caputo | cf | abc.
    #[arg(long)]
    kind: Option<String>,
    /// Fractional order in (0, 1].
    #[arg(long)]
    alpha: Option<f64>,
    /// Exponent of the power right-hand side (power-rhs only).
    #[arg(long)]
    beta: Option<f64>,
    /// Step size.
    #[arg(long)]
    dt: Option<f64>,
    /// End of the integration span [0, t_end].
    #[arg(long)]
    t_end: Option<f64>,
    /// Corrector applications per step.
    #[arg(long)]
    sweeps: Option<usize>,
    /// Trajectory CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// key=value defaults file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write a gnuplot script next to each CSV.
    #[arg(long)]
    emit_plot_script: bool,
    #[command(flatten)]
    gm: GmOverrides,
}

#[derive(Args)]
struct BenchArgs {
    /// Which reference table to rerun (1-4).
    #[arg(long)]
    table: Option<u8>,
    /// Comparison CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// key=value defaults file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write a gnuplot script next to the CSV.
    #[arg(long)]
    emit_plot_script: bool,
}

#[derive(Args)]
struct GmArgs {
    /// Fractional order in (0, 1].
    #[arg(long)]
    alpha: Option<f64>,
    /// Step size.
    #[arg(long)]
    dt: Option<f64>,
    /// End of the integration span [0, t_end].
    #[arg(long)]
    t_end: Option<f64>,
    /// Corrector applications per step.
    #[arg(long)]
    sweeps: Option<usize>,
    /// Trajectory CSV path (phase CSV lands next to it).
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON report path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// key=value defaults file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write a gnuplot script next to each CSV.
    #[arg(long)]
    emit_plot_script: bool,
    #[command(flatten)]
    params: GmOverrides,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Bench(args) => run_bench(args),
        Command::Gm(args) => run_gm(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

/// Rerun the prefix of a diverged solve so a partial CSV can be written;
/// determinism makes the rerun reproduce the failed run's prefix exactly.
fn partial_states(
    ivp: &fracpc::FractionalIvp,
    config: &SolverConfig,
    dt: f64,
    failing_step: usize,
) -> Vec<Vec<f64>> {
    if failing_step < 2 {
        return vec![ivp.y0.clone()];
    }
    UniformGrid::with_steps(dt, failing_step - 1)
        .ok()
        .and_then(|g| solve(ivp, config, &g).ok())
        .map(|t| t.states)
        .unwrap_or_else(|| vec![ivp.y0.clone()])
}

fn run_solve(args: SolveArgs) -> Result<(), CliError> {
    let config_file = ConfigFile::load(args.config.as_deref())?;
    let problem_id: String = resolve_required(args.problem, &config_file, "problem")?;
    let problem = builtin(&problem_id)?;
    let kind_name: String = resolve(
        args.kind,
        &config_file,
        "kind",
        problem.default_kind.name().to_string(),
    )?;
    let kind = DerivativeKind::parse(&kind_name)?;
    let alpha: f64 = resolve(args.alpha, &config_file, "alpha", 1.0)?;
    let beta: f64 = resolve(args.beta, &config_file, "beta", 0.9)?;
    let scheme_name: String = resolve(args.scheme, &config_file, "scheme", "ppc".to_string())?;
    let scheme = scheme_by_name(&scheme_name)?;
    let dt: f64 = resolve_required(args.dt, &config_file, "dt")?;
    let t_end: f64 = resolve(args.t_end, &config_file, "t-end", problem.default_span)?;
    let sweeps: usize = resolve(args.sweeps, &config_file, "sweeps", 1)?;
    let out: PathBuf = resolve(
        args.out,
        &config_file,
        "out",
        PathBuf::from("trajectory.csv"),
    )?;
    let emit_plots = args.emit_plot_script
        || config_file
            .get::<bool>("emit-plot-script")?
            .unwrap_or(false);

    let gm_params = args.gm.apply(&config_file)?;
    let params = ProblemParams {
        beta,
        gm: gm_params,
    };
    let ivp = problem.ivp(&params, kind, alpha)?;
    let grid = make_grid(dt, t_end)?;
    let solver_config = SolverConfig {
        scheme: scheme.id(),
        corrector_sweeps: sweeps,
        ..SolverConfig::default()
    };

    match solve(&ivp, &solver_config, &grid) {
        Ok(traj) => {
            output::write_trajectory_csv(&out, &traj)?;
            if emit_plots {
                output::write_trajectory_script(&out, ivp.dim)?;
            }
            Ok(())
        }
        Err(fracpc::Error::Divergence { step, detail }) => {
            let states = partial_states(&ivp, &solver_config, dt, step);
            output::write_states_csv(&out, &grid, &states)?;
            if emit_plots {
                output::write_trajectory_script(&out, ivp.dim)?;
            }
            Err(CliError::Numeric(format!(
                "divergence at step {step}: {detail} (partial trajectory written to {})",
                out.display()
            )))
        }
        Err(other) => Err(other.into()),
    }
}

fn run_bench(args: BenchArgs) -> Result<(), CliError> {
    let config_file = ConfigFile::load(args.config.as_deref())?;
    let table: u8 = resolve_required(args.table, &config_file, "table")?;
    if !(1..=4).contains(&table) {
        return Err(CliError::Usage(format!("table must be 1..=4, got {table}")));
    }
    let out: PathBuf = resolve(
        args.out,
        &config_file,
        "out",
        PathBuf::from(format!("bench-table{table}.csv")),
    )?;
    let emit_plots = args.emit_plot_script
        || config_file
            .get::<bool>("emit-plot-script")?
            .unwrap_or(false);

    let results = bench::run_table(table)?;
    output::write_bench_csv(&out, &results)?;
    if emit_plots {
        output::write_bench_script(&out)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ComplexOut {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct GmReport {
    manifest: RunManifest,
    params: GmParamsOut,
    equilibrium: [f64; 2],
    trace: f64,
    determinant: f64,
    discriminant: f64,
    eigenvalues: [ComplexOut; 2],
    threshold_lhs: Option<f64>,
    threshold_rhs: Option<f64>,
    verdict: String,
    branch: String,
}

/// Phase CSV lands next to the trajectory CSV as `<stem>-phase.csv`.
fn phase_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "trajectory".to_string());
    out.with_file_name(format!("{stem}-phase.csv"))
}

fn run_gm(args: GmArgs) -> Result<(), CliError> {
    let config_file = ConfigFile::load(args.config.as_deref())?;
    let alpha: f64 = resolve_required(args.alpha, &config_file, "alpha")?;
    let dt: f64 = resolve(args.dt, &config_file, "dt", 0.01)?;
    let t_end: f64 = resolve(args.t_end, &config_file, "t-end", 100.0)?;
    let sweeps: usize = resolve(args.sweeps, &config_file, "sweeps", 1)?;
    let out: PathBuf = resolve(
        args.out,
        &config_file,
        "out",
        PathBuf::from("gm-trajectory.csv"),
    )?;
    let report_path: PathBuf = resolve(
        args.report,
        &config_file,
        "report",
        PathBuf::from("gm-report.json"),
    )?;
    let emit_plots = args.emit_plot_script
        || config_file
            .get::<bool>("emit-plot-script")?
            .unwrap_or(false);

    let p = args.params.apply(&config_file)?;
    let verdict = gm::classify(alpha, &p, 1e-12)?;
    let (trace, determinant) = gm::trace_det(&p);
    let discriminant = trace * trace - 4.0 * determinant;
    let (l1, l2) = verdict.eigenvalues;

    let manifest = RunManifest {
        subcommand: "gm".to_string(),
        problem: Some("gierer-meinhardt".to_string()),
        scheme: Some("ppc".to_string()),
        kind: Some("caputo".to_string()),
        alpha: Some(alpha),
        beta: None,
        gm_params: Some(p.into()),
        dt: Some(dt),
        t_end: Some(t_end),
        corrector_sweeps: Some(sweeps),
        table: None,
        out: Some(out.display().to_string()),
        report: Some(report_path.display().to_string()),
        emit_plot_script: emit_plots,
    };
    let report = GmReport {
        manifest,
        params: p.into(),
        equilibrium: gm::equilibrium(&p),
        trace,
        determinant,
        discriminant,
        eigenvalues: [
            ComplexOut {
                re: l1.re,
                im: l1.im,
            },
            ComplexOut {
                re: l2.re,
                im: l2.im,
            },
        ],
        threshold_lhs: verdict.threshold_lhs,
        threshold_rhs: verdict.threshold_rhs,
        verdict: verdict.verdict.name().to_string(),
        branch: verdict.branch.name().to_string(),
    };
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::Io(format!("cannot serialize report: {e}")))?;
    std::fs::write(&report_path, json + "\n")
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", report_path.display())))?;

    let ivp = gm::ivp(&p, DerivativeKind::Caputo, alpha)?;
    let grid = make_grid(dt, t_end)?;
    let solver_config = SolverConfig {
        corrector_sweeps: sweeps,
        ..SolverConfig::default()
    };
    let phase = phase_path(&out);
    match solve(&ivp, &solver_config, &grid) {
        Ok(traj) => {
            output::write_trajectory_csv(&out, &traj)?;
            output::write_phase_csv(&phase, &traj)?;
            if emit_plots {
                output::write_trajectory_script(&out, 2)?;
                output::write_phase_script(&phase)?;
            }
            Ok(())
        }
        Err(fracpc::Error::Divergence { step, detail }) => {
            let states = partial_states(&ivp, &solver_config, dt, step);
            output::write_states_csv(&out, &grid, &states)?;
            Err(CliError::Numeric(format!(
                "divergence at step {step}: {detail} (report and partial trajectory written)"
            )))
        }
        Err(other) => Err(other.into()),
    }
}
