//! Exponential-kernel scheme: a local difference term plus the classical
//! three-point rules scaled by α/M(α).

use super::classical::{ab3_increment, am2_increment};
use super::StepContext;
use crate::error::Result;
use crate::specfun::m_norm;

/// Explicit predictor:
/// y_m + (1−α)/M(α)·(f_m − f_{m−1}) + α/M(α)·(three-point explicit increment).
pub fn predict_cf(ctx: &StepContext<'_>) -> Result<Vec<f64>> {
    ctx.require_depth("predict_cf", 2)?;
    let m = ctx.m;
    let a = ctx.alpha();
    let mn = m_norm(a)?;
    let local = (1.0 - a) / mn;
    let scale = a / mn;

    let (fm, fm1) = (ctx.f(m), ctx.f(m - 1));
    let mut inc = vec![0.0; ctx.dim()];
    ab3_increment(&mut inc, ctx.dt(), fm, fm1, ctx.f(m - 2));
    let mut y = ctx.state(m).to_vec();
    for j in 0..y.len() {
        y[j] += local * (fm[j] - fm1[j]) + scale * inc[j];
    }
    Ok(y)
}

/// Implicit corrector evaluated at the predicted state:
/// y_m + (1−α)/M(α)·(f(t_{m+1}, y_pred) − f_m) + α/M(α)·(implicit increment).
pub fn correct_cf(ctx: &StepContext<'_>, y_pred: &[f64]) -> Result<Vec<f64>> {
    ctx.require_depth("correct_cf", 1)?;
    let m = ctx.m;
    let a = ctx.alpha();
    let mn = m_norm(a)?;
    let local = (1.0 - a) / mn;
    let scale = a / mn;

    let f_pred = ctx.eval_f(ctx.t_next(), y_pred);
    let fm = ctx.f(m);
    let mut inc = vec![0.0; ctx.dim()];
    am2_increment(&mut inc, ctx.dt(), &f_pred, fm, ctx.f(m - 1));
    let mut y = ctx.state(m).to_vec();
    for j in 0..y.len() {
        y[j] += local * (f_pred[j] - fm[j]) + scale * inc[j];
    }
    Ok(y)
}
