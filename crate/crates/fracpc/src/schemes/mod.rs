//! Stepping rules for every (derivative kind, scheme) pair and the solve
//! driver.
//!
//! Each scheme variant lives behind the [`Scheme`] trait and is registered by
//! name (`ppc`, `ias`, `as`, `ab2`); the driver looks the strategy up at run
//! time from the [`SolverConfig`]. Steps whose stencil reaches further back
//! than the available history are delegated to [`startup`].

mod abc;
mod caputo;
mod cf;
mod classical;
mod startup;

pub use abc::{correct_abc, predict_abc};
pub use caputo::{correct_caputo, predict_caputo_ias};
pub use cf::{correct_cf, predict_cf};
pub use classical::{correct_classical, predict_classical_as, step_two_step_ab};
pub use startup::startup;

use crate::error::{Error, Result};
use crate::kernels::PowerTable;
use crate::model::{
    DerivativeKind, FractionalIvp, SchemeId, SolverConfig, Trajectory, UniformGrid,
};

/// Everything a stepping rule needs to produce y_{m+1}: the problem, the
/// grid, the partially filled history (valid through index `m`), and the
/// per-solve power cache.
pub struct StepContext<'a> {
    pub m: usize,
    pub grid: &'a UniformGrid,
    pub ivp: &'a FractionalIvp,
    pub config: &'a SolverConfig,
    pub states: &'a [Vec<f64>],
    pub f_hist: &'a [Vec<f64>],
    pub powers: &'a PowerTable,
}

impl<'a> StepContext<'a> {
    pub fn dt(&self) -> f64 {
        self.grid.dt()
    }

    pub fn alpha(&self) -> f64 {
        self.ivp.alpha
    }

    pub fn dim(&self) -> usize {
        self.ivp.dim
    }

    pub fn y0(&self) -> &[f64] {
        &self.ivp.y0
    }

    pub fn state(&self, i: usize) -> &[f64] {
        &self.states[i]
    }

    pub fn f(&self, i: usize) -> &[f64] {
        &self.f_hist[i]
    }

    pub fn eval_f(&self, t: f64, y: &[f64]) -> Vec<f64> {
        self.ivp.eval(t, y)
    }

    /// Time of the node being computed.
    pub fn t_next(&self) -> f64 {
        self.grid.node(self.m + 1)
    }

    /// Guard an operation that needs history back to index m − depth.
    pub(crate) fn require_depth(&self, op: &str, depth: usize) -> Result<()> {
        if self.m < depth {
            return Err(Error::Usage(format!(
                "{op} needs m >= {depth} (history through f_{{m-{depth}}}), got m = {}",
                self.m
            )));
        }
        if self.states.len() <= self.m || self.f_hist.len() <= self.m {
            return Err(Error::Usage(format!(
                "{op} at m = {} needs states and f history through index {}",
                self.m, self.m
            )));
        }
        Ok(())
    }
}

/// One interchangeable stepping strategy.
pub trait Scheme: Send + Sync {
    fn id(&self) -> SchemeId;

    /// CLI-facing name.
    fn name(&self) -> &'static str {
        self.id().name()
    }

    fn supports(&self, kind: DerivativeKind) -> bool;

    /// First step index m at which the scheme's stencil is satisfiable;
    /// the driver covers smaller m with `startup`.
    fn first_regular_step(&self, kind: DerivativeKind) -> usize;

    /// Compute y_{m+1} from history through m.
    fn advance(&self, ctx: &StepContext<'_>) -> Result<Vec<f64>>;
}

/// Predict, evaluate, correct (repeated `corrector_sweeps` times).
struct ProposedPc;

/// The improved explicit predictor stepped on its own.
struct ImprovedAs;

/// The original three-point explicit rule; classical kind only.
struct ClassicalAs;

/// Two-step Adams-Bashforth baseline; classical kind only.
struct TwoStepAb;

impl Scheme for ProposedPc {
    fn id(&self) -> SchemeId {
        SchemeId::ProposedPc
    }

    fn supports(&self, _kind: DerivativeKind) -> bool {
        true
    }

    fn first_regular_step(&self, _kind: DerivativeKind) -> usize {
        // Classical/CF predictors reach back to f_{m-2}; the fractional
        // predictors' linear head cells reference f_2.
        2
    }

    fn advance(&self, ctx: &StepContext<'_>) -> Result<Vec<f64>> {
        let mut y = match ctx.ivp.kind {
            DerivativeKind::Classical => predict_classical_as(ctx)?,
            DerivativeKind::Caputo => predict_caputo_ias(ctx)?,
            DerivativeKind::CaputoFabrizio => predict_cf(ctx)?,
            DerivativeKind::AtanganaBaleanu => predict_abc(ctx)?,
        };
        for _ in 0..ctx.config.corrector_sweeps {
            y = match ctx.ivp.kind {
                DerivativeKind::Classical => correct_classical(ctx, &y)?,
                DerivativeKind::Caputo => correct_caputo(ctx, &y)?,
                DerivativeKind::CaputoFabrizio => correct_cf(ctx, &y)?,
                DerivativeKind::AtanganaBaleanu => correct_abc(ctx, &y)?,
            };
        }
        Ok(y)
    }
}

impl Scheme for ImprovedAs {
    fn id(&self) -> SchemeId {
        SchemeId::ImprovedAs
    }

    fn supports(&self, _kind: DerivativeKind) -> bool {
        true
    }

    fn first_regular_step(&self, _kind: DerivativeKind) -> usize {
        2
    }

    fn advance(&self, ctx: &StepContext<'_>) -> Result<Vec<f64>> {
        match ctx.ivp.kind {
            DerivativeKind::Classical => predict_classical_as(ctx),
            DerivativeKind::Caputo => predict_caputo_ias(ctx),
            DerivativeKind::CaputoFabrizio => predict_cf(ctx),
            DerivativeKind::AtanganaBaleanu => predict_abc(ctx),
        }
    }
}

impl Scheme for ClassicalAs {
    fn id(&self) -> SchemeId {
        SchemeId::ClassicalAs
    }

    fn supports(&self, kind: DerivativeKind) -> bool {
        kind == DerivativeKind::Classical
    }

    fn first_regular_step(&self, _kind: DerivativeKind) -> usize {
        2
    }

    fn advance(&self, ctx: &StepContext<'_>) -> Result<Vec<f64>> {
        predict_classical_as(ctx)
    }
}

impl Scheme for TwoStepAb {
    fn id(&self) -> SchemeId {
        SchemeId::TwoStepAb
    }

    fn supports(&self, kind: DerivativeKind) -> bool {
        kind == DerivativeKind::Classical
    }

    fn first_regular_step(&self, _kind: DerivativeKind) -> usize {
        1
    }

    fn advance(&self, ctx: &StepContext<'_>) -> Result<Vec<f64>> {
        step_two_step_ab(ctx)
    }
}

static PROPOSED_PC: ProposedPc = ProposedPc;
static IMPROVED_AS: ImprovedAs = ImprovedAs;
static CLASSICAL_AS: ClassicalAs = ClassicalAs;
static TWO_STEP_AB: TwoStepAb = TwoStepAb;

/// All registered schemes, in a fixed order.
pub fn all_schemes() -> [&'static dyn Scheme; 4] {
    [&PROPOSED_PC, &IMPROVED_AS, &CLASSICAL_AS, &TWO_STEP_AB]
}

/// Runtime lookup by CLI name.
pub fn scheme_by_name(name: &str) -> Result<&'static dyn Scheme> {
    all_schemes()
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| Error::UnknownName {
            kind: "scheme",
            name: name.to_string(),
            valid: "ppc, ias, as, ab2".to_string(),
        })
}

pub fn scheme_by_id(id: SchemeId) -> &'static dyn Scheme {
    match id {
        SchemeId::ProposedPc => &PROPOSED_PC,
        SchemeId::ImprovedAs => &IMPROVED_AS,
        SchemeId::ClassicalAs => &CLASSICAL_AS,
        SchemeId::TwoStepAb => &TWO_STEP_AB,
    }
}

fn check_state(y: &[f64], step: usize, guard: f64) -> Result<()> {
    for &v in y {
        if !v.is_finite() {
            return Err(Error::Divergence {
                step,
                detail: format!("non-finite state component {v}"),
            });
        }
        if v.abs() > guard {
            return Err(Error::Divergence {
                step,
                detail: format!("state magnitude {} exceeds guard {guard}", v.abs()),
            });
        }
    }
    Ok(())
}

fn check_rhs(f: &[f64], step: usize) -> Result<()> {
    if f.iter().any(|v| !v.is_finite()) {
        return Err(Error::Divergence {
            step,
            detail: "right-hand side evaluated to a non-finite value".to_string(),
        });
    }
    Ok(())
}

/// Run the configured scheme over the whole grid.
///
/// Every step is advanced by the scheme's rule once its stencil is
/// satisfiable and by the kind-matched linear startup before that. The
/// right-hand side is evaluated once at each corrected state and cached, so
/// later steps reuse it. States that leave the finite/bounded regime abort
/// with the failing node index.
pub fn solve(ivp: &FractionalIvp, config: &SolverConfig, grid: &UniformGrid) -> Result<Trajectory> {
    config.validate(ivp.kind)?;
    let scheme = scheme_by_id(config.scheme);
    let n = grid.n_steps();
    let powers = match ivp.kind {
        DerivativeKind::Caputo | DerivativeKind::AtanganaBaleanu => {
            PowerTable::new(ivp.alpha, n + 1)
        }
        _ => PowerTable::empty(ivp.alpha),
    };

    let mut states: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    let mut f_hist: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    check_state(&ivp.y0, 0, config.divergence_guard)?;
    let f0 = ivp.eval(0.0, &ivp.y0);
    check_rhs(&f0, 0)?;
    states.push(ivp.y0.clone());
    f_hist.push(f0);

    let start = scheme.first_regular_step(ivp.kind);
    for m in 0..n {
        let y_next = {
            let ctx = StepContext {
                m,
                grid,
                ivp,
                config,
                states: &states,
                f_hist: &f_hist,
                powers: &powers,
            };
            if m < start {
                startup(&ctx)?
            } else {
                scheme.advance(&ctx)?
            }
        };
        check_state(&y_next, m + 1, config.divergence_guard)?;
        let f_next = ivp.eval(grid.node(m + 1), &y_next);
        check_rhs(&f_next, m + 1)?;
        states.push(y_next);
        f_hist.push(f_next);
    }

    Ok(Trajectory {
        grid: grid.clone(),
        states,
        f_history: f_hist,
    })
}
