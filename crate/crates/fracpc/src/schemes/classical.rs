//! Stepping rules for the classical first derivative: the three-point
//! explicit predictor, its implicit corrector, and the two-step
//! Adams-Bashforth baseline.

use super::StepContext;
use crate::error::Result;

/// y_m + Δt·(23/12·f_m − 4/3·f_{m−1} + 5/12·f_{m−2}), the explicit
/// three-point rule obtained from the backward quadratic stencil.
pub(crate) fn ab3_increment(out: &mut [f64], dt: f64, fm: &[f64], fm1: &[f64], fm2: &[f64]) {
    for j in 0..out.len() {
        out[j] += dt * (23.0 / 12.0 * fm[j] - 4.0 / 3.0 * fm1[j] + 5.0 / 12.0 * fm2[j]);
    }
}

/// Δt·(5/12·f_next + 2/3·f_m − 1/12·f_{m−1}), the implicit two-step
/// Adams-Moulton increment used by every corrector at α = 1.
pub(crate) fn am2_increment(out: &mut [f64], dt: f64, f_next: &[f64], fm: &[f64], fm1: &[f64]) {
    for j in 0..out.len() {
        out[j] += dt * (5.0 / 12.0 * f_next[j] + 2.0 / 3.0 * fm[j] - 1.0 / 12.0 * fm1[j]);
    }
}

/// Explicit predictor for the classical problem; needs f_{m−2}.
pub fn predict_classical_as(ctx: &StepContext<'_>) -> Result<Vec<f64>> {
    ctx.require_depth("predict_classical_as", 2)?;
    let m = ctx.m;
    let mut y = ctx.state(m).to_vec();
    ab3_increment(&mut y, ctx.dt(), ctx.f(m), ctx.f(m - 1), ctx.f(m - 2));
    Ok(y)
}

/// Implicit corrector for the classical problem, evaluated at the predicted
/// state: y_m + Δt·(5/12·f(t_{m+1}, y_pred) + 2/3·f_m − 1/12·f_{m−1}).
pub fn correct_classical(ctx: &StepContext<'_>, y_pred: &[f64]) -> Result<Vec<f64>> {
    ctx.require_depth("correct_classical", 1)?;
    let m = ctx.m;
    let f_pred = ctx.eval_f(ctx.t_next(), y_pred);
    let mut y = ctx.state(m).to_vec();
    am2_increment(&mut y, ctx.dt(), &f_pred, ctx.f(m), ctx.f(m - 1));
    Ok(y)
}

/// Baseline explicit rule: y_m + Δt·(3/2·f_m − 1/2·f_{m−1}).
pub fn step_two_step_ab(ctx: &StepContext<'_>) -> Result<Vec<f64>> {
    ctx.require_depth("step_two_step_ab", 1)?;
    let m = ctx.m;
    let dt = ctx.dt();
    let (fm, fm1) = (ctx.f(m), ctx.f(m - 1));
    let mut y = ctx.state(m).to_vec();
    for j in 0..y.len() {
        y[j] += dt * (1.5 * fm[j] - 0.5 * fm1[j]);
    }
    Ok(y)
}
