//! Builtin benchmark problems with their exact solutions, plus the error
//! metrics used by the benchmark harness.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gm::{self, GmParams};
use crate::model::{DerivativeKind, FractionalIvp, Rhs, Trajectory};
use crate::specfun::gamma_pos;

/// Extra knobs some problems take: the exponent of the power right-hand
/// side and the activator-inhibitor constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams {
    pub beta: f64,
    pub gm: GmParams,
}

impl Default for ProblemParams {
    fn default() -> Self {
        Self {
            beta: 0.9,
            gm: GmParams::default(),
        }
    }
}

type Factory = fn(&ProblemParams, DerivativeKind, f64) -> Result<FractionalIvp>;
type Exact = fn(f64, f64, &ProblemParams) -> Vec<f64>;

/// A registered benchmark problem.
#[derive(Debug)]
pub struct NamedProblem {
    pub id: &'static str,
    /// Derivative the problem is naturally posed with.
    pub default_kind: DerivativeKind,
    /// Time span the reference experiments use.
    pub default_span: f64,
    factory: Factory,
    exact: Option<Exact>,
}

impl NamedProblem {
    pub fn ivp(
        &self,
        params: &ProblemParams,
        kind: DerivativeKind,
        alpha: f64,
    ) -> Result<FractionalIvp> {
        (self.factory)(params, kind, alpha)
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Exact solution at time t, when one is known.
    pub fn exact(&self, t: f64, alpha: f64, params: &ProblemParams) -> Option<Vec<f64>> {
        self.exact.map(|f| f(t, alpha, params))
    }
}

fn exp_linear_factory(
    _p: &ProblemParams,
    kind: DerivativeKind,
    alpha: f64,
) -> Result<FractionalIvp> {
    let rhs: Rhs = Arc::new(|_t, y, out| out[0] = 2.0 * y[0] + 3.0);
    FractionalIvp::new(1, rhs, vec![1.0], kind, alpha)
}

fn exp_linear_exact(t: f64, _alpha: f64, _p: &ProblemParams) -> Vec<f64> {
    vec![2.5 * (2.0 * t).exp() - 1.5]
}

fn cos_riccati_factory(
    _p: &ProblemParams,
    kind: DerivativeKind,
    alpha: f64,
) -> Result<FractionalIvp> {
    let rhs: Rhs = Arc::new(|t, y, out| out[0] = -(2.0 * t).cos() * y[0] * y[0]);
    FractionalIvp::new(1, rhs, vec![1.0], kind, alpha)
}

fn cos_riccati_exact(t: f64, _alpha: f64, _p: &ProblemParams) -> Vec<f64> {
    vec![2.0 / (2.0 + (2.0 * t).sin())]
}

fn power_rhs_factory(p: &ProblemParams, kind: DerivativeKind, alpha: f64) -> Result<FractionalIvp> {
    let beta = p.beta;
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::Config(format!(
            "beta must be non-negative, got {beta}"
        )));
    }
    let rhs: Rhs = Arc::new(move |t, _y, out| out[0] = t.powf(beta));
    FractionalIvp::new(1, rhs, vec![0.0], kind, alpha)
}

fn power_rhs_exact(t: f64, alpha: f64, p: &ProblemParams) -> Vec<f64> {
    let beta = p.beta;
    vec![gamma_pos(beta + 1.0) / gamma_pos(alpha + beta + 1.0) * t.powf(alpha + beta)]
}

fn poly_manufactured_factory(
    _p: &ProblemParams,
    kind: DerivativeKind,
    alpha: f64,
) -> Result<FractionalIvp> {
    if alpha.is_nan() || alpha <= 0.0 || alpha > 1.0 {
        return Err(Error::Config(format!(
            "alpha must be in (0, 1], got {alpha}"
        )));
    }
    let g3 = gamma_pos(3.0 - alpha);
    let g2 = gamma_pos(2.0 - alpha);
    let rhs: Rhs = Arc::new(move |t, y, out| {
        out[0] = 2.0 * t.powf(2.0 - alpha) / g3 - t.powf(1.0 - alpha) / g2 - y[0] - t + t * t;
    });
    FractionalIvp::new(1, rhs, vec![0.0], kind, alpha)
}

fn poly_manufactured_exact(t: f64, _alpha: f64, _p: &ProblemParams) -> Vec<f64> {
    vec![t * t - t]
}

fn gierer_meinhardt_factory(
    p: &ProblemParams,
    kind: DerivativeKind,
    alpha: f64,
) -> Result<FractionalIvp> {
    gm::ivp(&p.gm, kind, alpha)
}

static PROBLEMS: [NamedProblem; 5] = [
    NamedProblem {
        id: "exp-linear",
        default_kind: DerivativeKind::Classical,
        default_span: 1.0,
        factory: exp_linear_factory,
        exact: Some(exp_linear_exact),
    },
    NamedProblem {
        id: "cos-riccati",
        default_kind: DerivativeKind::Classical,
        default_span: 30.0,
        factory: cos_riccati_factory,
        exact: Some(cos_riccati_exact),
    },
    NamedProblem {
        id: "power-rhs",
        default_kind: DerivativeKind::Caputo,
        default_span: 3.0,
        factory: power_rhs_factory,
        exact: Some(power_rhs_exact),
    },
    NamedProblem {
        id: "poly-manufactured",
        default_kind: DerivativeKind::Caputo,
        default_span: 1.0,
        factory: poly_manufactured_factory,
        exact: Some(poly_manufactured_exact),
    },
    NamedProblem {
        id: "gierer-meinhardt",
        default_kind: DerivativeKind::Caputo,
        default_span: 100.0,
        factory: gierer_meinhardt_factory,
        exact: None,
    },
];

/// All registered problem ids.
pub fn problem_ids() -> Vec<&'static str> {
    PROBLEMS.iter().map(|p| p.id).collect()
}

/// Look up a builtin problem by id.
pub fn builtin(id: &str) -> Result<&'static NamedProblem> {
    PROBLEMS
        .iter()
        .find(|p| p.id == id)
        .ok_or_else(|| Error::UnknownName {
            kind: "problem",
            name: id.to_string(),
            valid: problem_ids().join(", "),
        })
}

/// Maximum over all nodes and components of |y_m − exact(t_m)|.
pub fn max_abs_error(traj: &Trajectory, exact: impl Fn(f64) -> Vec<f64>) -> f64 {
    let mut worst = 0.0f64;
    for m in 0..=traj.grid.n_steps() {
        let reference = exact(traj.grid.node(m));
        for (a, b) in traj.state(m).iter().zip(reference.iter()) {
            worst = worst.max((a - b).abs());
        }
    }
    worst
}

/// log(err_coarse/err_fine)/log(ratio): the observed convergence order under
/// grid refinement by `ratio`.
pub fn empirical_order(err_coarse: f64, err_fine: f64, ratio: f64) -> Result<f64> {
    if err_coarse.is_nan() || err_fine.is_nan() || err_coarse <= 0.0 || err_fine <= 0.0 {
        return Err(Error::Domain(format!(
            "errors must be positive, got {err_coarse} and {err_fine}"
        )));
    }
    if ratio.is_nan() || ratio <= 1.0 {
        return Err(Error::Domain(format!(
            "refinement ratio must exceed 1, got {ratio}"
        )));
    }
    Ok((err_coarse / err_fine).ln() / ratio.ln())
}
