//! Adaptive-quadrature oracle for the cell integrals.
//!
//! Integrates the defining integrand of each kernel id numerically, with no
//! reference to the closed forms under test. The singular factor
//! (t_{m+1} − s)^{α−1} is absorbed by the substitution u = (t_{m+1} − s)^α,
//! after which adaptive Simpson converges rapidly:
//!
//!   ∫_{t_i}^{t_{i+1}} p(s)·(T − s)^{α−1} ds
//!     = (1/α) ∫_{(T−t_{i+1})^α}^{(T−t_i)^α} p(T − u^{1/α}) du.

use fracpc::kernels::KernelId;

/// Adaptive Simpson with absolute-ish tolerance scaled off the first pass.
fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(a, fa, m, fm, flm);
        let right = simpson(m, fm, b, fb, frm);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, fa, b, fb, fm);
    recurse(f, a, fa, b, fb, fm, whole, tol, 48)
}

/// Numerically integrate the defining integral of `id` at (α, m, i, dt).
pub fn quadrature_weight(id: KernelId, alpha: f64, m: usize, i: usize, dt: f64) -> f64 {
    let t = |j: f64| j * dt;
    let mf = m as f64;
    let fi = i as f64;
    let t_next = t(mf + 1.0);

    // Polynomial factor of the integrand, as a function of s.
    let poly: Box<dyn Fn(f64) -> f64> = match id {
        KernelId::CStep => Box::new(|_s| 1.0),
        KernelId::CLin => Box::new(move |s| s - t(fi + 1.0)),
        KernelId::CQuad => Box::new(move |s| (s - t(fi)) * (s - t(fi + 1.0))),
        KernelId::CFirstLin => Box::new(|s| s),
        KernelId::PLin => Box::new(move |s| s - t(fi)),
        KernelId::PShift => Box::new(move |s| s - t(fi - 2.0)),
        KernelId::PQuad => Box::new(move |s| (s - t(fi - 2.0)) * (s - t(fi - 1.0))),
        KernelId::ClLin => Box::new(move |s| s - t(mf + 1.0)),
        KernelId::ClQuad => Box::new(move |s| (s - t(mf)) * (s - t(mf + 1.0))),
    };

    // Integration cell.
    let (lo, hi) = match id {
        KernelId::CFirstLin => (0.0, t(1.0)),
        KernelId::ClLin | KernelId::ClQuad => (t(mf), t(mf + 1.0)),
        _ => (t(fi), t(fi + 1.0)),
    };

    let scale = dt * (1.0 + poly(lo).abs().max(poly(hi).abs()));
    let tol = 1e-12 * scale;

    if id.is_classical() {
        return adaptive_simpson(&|s| poly(s), lo, hi, tol);
    }

    // Kernel-weighted: substitute u = (t_{m+1} − s)^α.
    let inv_alpha = 1.0 / alpha;
    let u_lo = (t_next - hi).max(0.0).powf(alpha);
    let u_hi = (t_next - lo).powf(alpha);
    let g = |u: f64| poly(t_next - u.powf(inv_alpha));
    adaptive_simpson(&g, u_lo, u_hi, tol) / alpha
}
