//! Power-law-kernel scheme: the improved explicit predictor built on the
//! backward-shifted quadratic stencil, and the implicit corrector with the
//! full memory term.

use super::StepContext;
use crate::error::Result;
use crate::kernels::{
    c_step_bracket, p_lin_bracket, p_quad_bracket, p_shift_bracket, upsilon_into, ProductCoeffs,
};

/// Accumulates the product-integration part of the improved predictor into
/// `acc`: the two linear head cells plus the shifted-stencil tail.
///
/// The i = 1 head cell's slope term references f_2; at m = 1 that value does
/// not exist yet, so the cell falls back to its constant part (the driver
/// never reaches this case — startup covers m < 2).
pub(crate) fn ias_integral_into(ctx: &StepContext<'_>, acc: &mut [f64]) -> Result<()> {
    let m = ctx.m;
    let a = ctx.alpha();
    let co = ProductCoeffs::new(a, ctx.dt());
    let pw = ctx.powers;

    // Head cells [t_0, t_1] and [t_1, t_2]: linear interpolation.
    for i in 0..=1usize.min(m) {
        let k = m - i;
        let w = co.c_step * c_step_bracket(pw.get(k), pw.get(k + 1));
        let fi = ctx.f(i);
        for (j, slot) in acc.iter_mut().enumerate() {
            *slot += w * fi[j];
        }
    }
    let slope_end = if m >= 2 { 1 } else { 0 };
    for i in 0..=slope_end {
        let k = m - i;
        let w = co.c_lin * p_lin_bracket(k as f64, pw.get(k), pw.get(k + 1), a);
        let (fi1, fi) = (ctx.f(i + 1), ctx.f(i));
        for (j, slot) in acc.iter_mut().enumerate() {
            *slot += w * (fi1[j] - fi[j]);
        }
    }

    // Tail cells [t_i, t_{i+1}], i >= 2: backward quadratic through
    // f_{i-2}, f_{i-1}, f_i, so the stencil never touches the new node.
    for i in 2..=m {
        let k = m - i;
        let kf = k as f64;
        let (ka, k1a) = (pw.get(k), pw.get(k + 1));
        let w_step = co.c_step * c_step_bracket(ka, k1a);
        let w_shift = co.c_lin * p_shift_bracket(kf, ka, k1a, a);
        let w_quad = co.c_quad * p_quad_bracket(kf, ka, k1a, a);
        let (f2, f1, f0) = (ctx.f(i), ctx.f(i - 1), ctx.f(i - 2));
        for (j, slot) in acc.iter_mut().enumerate() {
            *slot +=
                w_step * f0[j] + w_shift * (f1[j] - f0[j]) + w_quad * (f2[j] - 2.0 * f1[j] + f0[j]);
        }
    }
    Ok(())
}

/// Improved explicit predictor: y_0 plus the product integral of the
/// backward-stencil interpolant over [0, t_{m+1}].
pub fn predict_caputo_ias(ctx: &StepContext<'_>) -> Result<Vec<f64>> {
    ctx.require_depth("predict_caputo_ias", 1)?;
    let mut y = ctx.y0().to_vec();
    let mut acc = vec![0.0; ctx.dim()];
    ias_integral_into(ctx, &mut acc)?;
    for j in 0..y.len() {
        y[j] += acc[j];
    }
    Ok(y)
}

/// Accumulates the corrector's product integral into `acc`: first-cell
/// linear head, memory term Υ_{m−1}, and the current-cell terms evaluated at
/// the prediction.
pub(crate) fn corrector_integral_into(ctx: &StepContext<'_>, f_pred: &[f64], acc: &mut [f64]) {
    let m = ctx.m;
    let a = ctx.alpha();
    let co = ProductCoeffs::new(a, ctx.dt());
    let pw = ctx.powers;

    // Head: linear interpolant on [t_0, t_1] against the kernel anchored at
    // t_{m+1}.
    let (ma, m1a) = (pw.get(m), pw.get(m + 1));
    let w_h0 = co.c_step * c_step_bracket(ma, m1a);
    let w_h1 = co.c_lin * p_lin_bracket(m as f64, ma, m1a, a);
    let (f0, f1) = (ctx.f(0), ctx.f(1));
    for (j, slot) in acc.iter_mut().enumerate() {
        *slot += w_h0 * f0[j] + w_h1 * (f1[j] - f0[j]);
    }

    // Memory over cells 1..m-1.
    upsilon_into(&co, pw, m, m - 1, ctx.f_hist, acc);

    // Current cell i = m, with the implicit value replaced by the prediction.
    let (fm, fm1) = (ctx.f(m), ctx.f(m - 1));
    for (j, slot) in acc.iter_mut().enumerate() {
        *slot += co.c_step * f_pred[j] + a * co.c_lin * (fm[j] - f_pred[j])
            - a * co.c_quad * (f_pred[j] - 2.0 * fm[j] + fm1[j]);
    }
}

/// Implicit corrector evaluated at the predicted state.
pub fn correct_caputo(ctx: &StepContext<'_>, y_pred: &[f64]) -> Result<Vec<f64>> {
    ctx.require_depth("correct_caputo", 1)?;
    let f_pred = ctx.eval_f(ctx.t_next(), y_pred);
    let mut acc = vec![0.0; ctx.dim()];
    corrector_integral_into(ctx, &f_pred, &mut acc);
    let mut y = ctx.y0().to_vec();
    for j in 0..y.len() {
        y[j] += acc[j];
    }
    Ok(y)
}
