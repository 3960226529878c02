//! One-step linear-interpolation predictor-corrector used for the steps a
//! scheme's stencil cannot reach (m = 0, and m = 1 for the three-point and
//! backward-quadratic rules).
//!
//! Per kind: a rectangle-rule predictor followed by the matching linear
//! corrector — trapezoid for the classical derivative, the local-term
//! variant for the exponential kernel, and piecewise-linear product
//! integration with full memory for the power-law kernels. The corrector is
//! applied `corrector_sweeps` times.

use super::StepContext;
use crate::error::Result;
use crate::kernels::{c_step_bracket, p_lin_bracket, ProductCoeffs};
use crate::model::DerivativeKind;
use crate::specfun::{ab_norm, m_norm};

pub fn startup(ctx: &StepContext<'_>) -> Result<Vec<f64>> {
    ctx.require_depth("startup", 0)?;
    match ctx.ivp.kind {
        DerivativeKind::Classical => local_linear(ctx, 0.0, 1.0),
        DerivativeKind::CaputoFabrizio => {
            let a = ctx.alpha();
            let mn = m_norm(a)?;
            local_linear(ctx, (1.0 - a) / mn, a / mn)
        }
        DerivativeKind::Caputo => product_linear(ctx, 0.0, 1.0),
        DerivativeKind::AtanganaBaleanu => {
            let a = ctx.alpha();
            let ab = ab_norm(a)?;
            product_linear(ctx, (1.0 - a) / ab, a / ab)
        }
    }
}

/// Rectangle predictor + trapezoid corrector for the memoryless kinds, with
/// an optional local difference term: the update reads
/// y_m + local·(f_{m+1} − f_m) + scale·∫_{t_m}^{t_{m+1}} f ds.
fn local_linear(ctx: &StepContext<'_>, local: f64, scale: f64) -> Result<Vec<f64>> {
    let m = ctx.m;
    let dt = ctx.dt();
    let fm = ctx.f(m);
    let ym = ctx.state(m);

    let mut y: Vec<f64> = (0..ctx.dim()).map(|j| ym[j] + scale * dt * fm[j]).collect();
    for _ in 0..ctx.config.corrector_sweeps {
        let f_new = ctx.eval_f(ctx.t_next(), &y);
        for j in 0..y.len() {
            y[j] = ym[j] + local * (f_new[j] - fm[j]) + scale * dt * 0.5 * (f_new[j] + fm[j]);
        }
    }
    Ok(y)
}

/// Rectangle predictor + piecewise-linear product-integration corrector for
/// the power-law kinds: the update reads
/// y_0 + local·f_{m+1} + scale·(1/Γ(α))·∫_0^{t_{m+1}} f·(t_{m+1}−s)^{α−1} ds.
fn product_linear(ctx: &StepContext<'_>, local: f64, scale: f64) -> Result<Vec<f64>> {
    let m = ctx.m;
    let a = ctx.alpha();
    let co = ProductCoeffs::new(a, ctx.dt());
    let pw = ctx.powers;
    let dim = ctx.dim();
    let y0 = ctx.y0();
    let fm = ctx.f(m);

    // Rectangle: piecewise-constant product integration over all cells.
    let mut rect = vec![0.0; dim];
    for i in 0..=m {
        let k = m - i;
        let w = co.c_step * c_step_bracket(pw.get(k), pw.get(k + 1));
        let fi = ctx.f(i);
        for j in 0..dim {
            rect[j] += w * fi[j];
        }
    }
    let mut y: Vec<f64> = (0..dim)
        .map(|j| y0[j] + local * fm[j] + scale * rect[j])
        .collect();

    // Linear corrector: the slope terms over past cells are fixed; only the
    // final cell's slope depends on the new f value.
    let mut base = rect;
    for i in 0..m {
        let k = m - i;
        let w = co.c_lin * p_lin_bracket(k as f64, pw.get(k), pw.get(k + 1), a);
        let (fi1, fi) = (ctx.f(i + 1), ctx.f(i));
        for j in 0..dim {
            base[j] += w * (fi1[j] - fi[j]);
        }
    }
    // p_lin bracket at k = 0 is exactly 1.
    for _ in 0..ctx.config.corrector_sweeps {
        let f_new = ctx.eval_f(ctx.t_next(), &y);
        for j in 0..dim {
            y[j] = y0[j] + local * f_new[j] + scale * (base[j] + co.c_lin * (f_new[j] - fm[j]));
        }
    }
    Ok(y)
}
