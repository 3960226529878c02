//! Mittag-Leffler-kernel scheme: a local term plus the power-law product
//! integrals scaled by α/AB(α). Shares its integral accumulators with the
//! power-law module, so the α = 1 reduction is structural.

use super::caputo::{corrector_integral_into, ias_integral_into};
use super::StepContext;
use crate::error::Result;
use crate::specfun::ab_norm;

/// Improved explicit predictor:
/// y_0 + (1−α)/AB(α)·f_m + α/AB(α)·(backward-stencil product integral).
pub fn predict_abc(ctx: &StepContext<'_>) -> Result<Vec<f64>> {
    ctx.require_depth("predict_abc", 1)?;
    let a = ctx.alpha();
    let ab = ab_norm(a)?;
    let local = (1.0 - a) / ab;
    let scale = a / ab;

    let mut acc = vec![0.0; ctx.dim()];
    ias_integral_into(ctx, &mut acc)?;
    let fm = ctx.f(ctx.m);
    let mut y = ctx.y0().to_vec();
    for j in 0..y.len() {
        y[j] += local * fm[j] + scale * acc[j];
    }
    Ok(y)
}

/// Implicit corrector evaluated at the predicted state:
/// y_0 + (1−α)/AB(α)·f(t_{m+1}, y_pred) + α/AB(α)·(corrector product integral).
pub fn correct_abc(ctx: &StepContext<'_>, y_pred: &[f64]) -> Result<Vec<f64>> {
    ctx.require_depth("correct_abc", 1)?;
    let a = ctx.alpha();
    let ab = ab_norm(a)?;
    let local = (1.0 - a) / ab;
    let scale = a / ab;

    let f_pred = ctx.eval_f(ctx.t_next(), y_pred);
    let mut acc = vec![0.0; ctx.dim()];
    corrector_integral_into(ctx, &f_pred, &mut acc);
    let mut y = ctx.y0().to_vec();
    for j in 0..y.len() {
        y[j] += local * f_pred[j] + scale * acc[j];
    }
    Ok(y)
}
