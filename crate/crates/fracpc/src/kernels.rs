//! Closed-form product-integration weights and the memory-term accumulator
//! used by the power-law-kernel schemes.
//!
//! Every weight is a definite integral of a low-degree polynomial against the
//! kernel (t_{m+1} − s)^{α−1} over one grid cell. The closed forms reduce to
//! brackets in k = m − i built from k^α and (k+1)^α; a `PowerTable` caches
//! those powers per solve so an O(N²) history sweep does no transcendental
//! work in the inner loop.

use crate::error::{Error, Result};
use crate::specfun::gamma_pos;

/// k^α with the k = 0 case short-circuited to 0 and α = 1 returned exactly.
/// Written as exp(α·ln k) so results do not depend on the platform's pow.
pub fn pow_alpha(k: usize, alpha: f64) -> f64 {
    if k == 0 {
        0.0
    } else if alpha == 1.0 {
        k as f64
    } else {
        (alpha * (k as f64).ln()).exp()
    }
}

/// Cached k^α for k = 0..=max_index.
#[derive(Debug, Clone)]
pub struct PowerTable {
    alpha: f64,
    pow: Vec<f64>,
}

impl PowerTable {
    pub fn new(alpha: f64, max_index: usize) -> Self {
        let pow = (0..=max_index).map(|k| pow_alpha(k, alpha)).collect();
        Self { alpha, pow }
    }

    /// An empty table for kinds that never touch product weights.
    pub fn empty(alpha: f64) -> Self {
        Self {
            alpha,
            pow: Vec::new(),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn get(&self, k: usize) -> f64 {
        self.pow[k]
    }
}

// Bracket polynomials of the closed forms, with k = m − i, ka = k^α,
// k1a = (k+1)^α. Shared verbatim by `kernel_weight` and the steppers so the
// two paths agree bit for bit.

#[inline]
pub(crate) fn c_step_bracket(ka: f64, k1a: f64) -> f64 {
    k1a - ka
}

#[inline]
pub(crate) fn c_lin_bracket(k: f64, ka: f64, k1a: f64, a: f64) -> f64 {
    (k - a) * k1a - k * ka
}

#[inline]
pub(crate) fn c_quad_bracket(k: f64, ka: f64, k1a: f64, a: f64) -> f64 {
    k1a * (2.0 * k * k - a * (k + 1.0) + 2.0 * k) - ka * (2.0 * k * k + a * k + 2.0 * k)
}

#[inline]
pub(crate) fn p_lin_bracket(k: f64, ka: f64, k1a: f64, a: f64) -> f64 {
    (k + 1.0) * k1a - (k + a + 1.0) * ka
}

#[inline]
pub(crate) fn p_shift_bracket(k: f64, ka: f64, k1a: f64, a: f64) -> f64 {
    k1a * (k + 3.0 + 2.0 * a) - ka * (k + 3.0 + 3.0 * a)
}

#[inline]
pub(crate) fn p_quad_bracket(k: f64, ka: f64, k1a: f64, a: f64) -> f64 {
    k1a * (2.0 * k * k + (3.0 * a + 10.0) * k + 2.0 * a * a + 9.0 * a + 12.0)
        - ka * (2.0 * k * k + (5.0 * a + 10.0) * k + 6.0 * a * a + 18.0 * a + 12.0)
}

/// Identifies one of the closed-form cell integrals.
///
/// The first group integrates against the singular kernel with the forward
/// interpolation stencils of the corrector; the `P*` group belongs to the
/// backward-shifted predictor stencils; the `Cl*` pair are the plain
/// polynomial moments of the classical scheme (no kernel, no α).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelId {
    /// ∫ (t_{m+1}−s)^{α−1} ds over [t_i, t_{i+1}].
    CStep,
    /// ∫ (s−t_{i+1})(t_{m+1}−s)^{α−1} ds over [t_i, t_{i+1}].
    CLin,
    /// ∫ (s−t_i)(s−t_{i+1})(t_{m+1}−s)^{α−1} ds over [t_i, t_{i+1}].
    CQuad,
    /// ∫ s (t_{m+1}−s)^{α−1} ds over [0, t_1] (first-cell linear head; i = 0).
    CFirstLin,
    /// ∫ (s−t_i)(t_{m+1}−s)^{α−1} ds over [t_i, t_{i+1}].
    PLin,
    /// ∫ (s−t_{i−2})(t_{m+1}−s)^{α−1} ds over [t_i, t_{i+1}].
    PShift,
    /// ∫ (s−t_{i−2})(s−t_{i−1})(t_{m+1}−s)^{α−1} ds over [t_i, t_{i+1}].
    PQuad,
    /// ∫ (s−t_{m+1}) ds over [t_m, t_{m+1}] = −Δt²/2.
    ClLin,
    /// ∫ (s−t_m)(s−t_{m+1}) ds over [t_m, t_{m+1}] = −Δt³/6.
    ClQuad,
}

impl KernelId {
    pub const ALL: [KernelId; 9] = [
        KernelId::CStep,
        KernelId::CLin,
        KernelId::CQuad,
        KernelId::CFirstLin,
        KernelId::PLin,
        KernelId::PShift,
        KernelId::PQuad,
        KernelId::ClLin,
        KernelId::ClQuad,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            KernelId::CStep => "c_step",
            KernelId::CLin => "c_lin",
            KernelId::CQuad => "c_quad",
            KernelId::CFirstLin => "c_first_lin",
            KernelId::PLin => "p_lin",
            KernelId::PShift => "p_shift",
            KernelId::PQuad => "p_quad",
            KernelId::ClLin => "cl_lin",
            KernelId::ClQuad => "cl_quad",
        }
    }

    /// The classical moments carry no α, m, i dependence.
    pub fn is_classical(&self) -> bool {
        matches!(self, KernelId::ClLin | KernelId::ClQuad)
    }
}

/// Closed-form value of the cell integral selected by `id`.
pub fn kernel_weight(id: KernelId, alpha: f64, m: usize, i: usize, dt: f64) -> Result<f64> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::Usage(format!("dt must be positive, got {dt}")));
    }
    if id.is_classical() {
        return Ok(match id {
            KernelId::ClLin => -dt * dt / 2.0,
            KernelId::ClQuad => -dt * dt * dt / 6.0,
            _ => unreachable!(),
        });
    }
    if alpha.is_nan() || alpha <= 0.0 || alpha > 1.0 {
        return Err(Error::Usage(format!(
            "alpha must be in (0, 1] for kernel {}, got {alpha}",
            id.name()
        )));
    }
    if i > m {
        return Err(Error::Usage(format!(
            "kernel {} needs i <= m, got i = {i}, m = {m}",
            id.name()
        )));
    }
    if id == KernelId::CFirstLin && i != 0 {
        return Err(Error::Usage(format!(
            "kernel c_first_lin is only defined on the first cell (i = 0), got i = {i}"
        )));
    }
    let a = alpha;
    let k = m - i;
    let kf = k as f64;
    let ka = pow_alpha(k, a);
    let k1a = pow_alpha(k + 1, a);
    let dt_a = dt.powf(a);
    let w = match id {
        KernelId::CStep => dt_a / a * c_step_bracket(ka, k1a),
        KernelId::CLin => dt_a * dt / (a * (a + 1.0)) * c_lin_bracket(kf, ka, k1a, a),
        KernelId::CQuad => {
            dt_a * dt * dt / (a * (a + 1.0) * (a + 2.0)) * c_quad_bracket(kf, ka, k1a, a)
        }
        KernelId::CFirstLin | KernelId::PLin => {
            dt_a * dt / (a * (a + 1.0)) * p_lin_bracket(kf, ka, k1a, a)
        }
        KernelId::PShift => dt_a * dt / (a * (a + 1.0)) * p_shift_bracket(kf, ka, k1a, a),
        KernelId::PQuad => {
            dt_a * dt * dt / (a * (a + 1.0) * (a + 2.0)) * p_quad_bracket(kf, ka, k1a, a)
        }
        KernelId::ClLin | KernelId::ClQuad => unreachable!(),
    };
    if !w.is_finite() {
        return Err(Error::Overflow(format!(
            "kernel {} overflowed at alpha = {alpha}, m = {m}, i = {i}, dt = {dt}",
            id.name()
        )));
    }
    Ok(w)
}

/// Per-solve coefficients Δt^α/Γ(α+1), Δt^α/Γ(α+2), Δt^α/(2Γ(α+3)) that
/// multiply the step/linear/quadratic brackets in the fractional schemes.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ProductCoeffs {
    pub alpha: f64,
    pub c_step: f64,
    pub c_lin: f64,
    pub c_quad: f64,
}

impl ProductCoeffs {
    pub fn new(alpha: f64, dt: f64) -> Self {
        let dt_a = dt.powf(alpha);
        Self {
            alpha,
            c_step: dt_a / gamma_pos(alpha + 1.0),
            c_lin: dt_a / gamma_pos(alpha + 2.0),
            c_quad: dt_a / (2.0 * gamma_pos(alpha + 3.0)),
        }
    }
}

/// Memory term Υ_p at step m: the weighted history sums over i = 1..=p,
/// accumulated componentwise into `acc` in a fixed index order.
pub(crate) fn upsilon_into(
    coeffs: &ProductCoeffs,
    powers: &PowerTable,
    m: usize,
    p: usize,
    f_hist: &[Vec<f64>],
    acc: &mut [f64],
) {
    let a = coeffs.alpha;
    for i in 1..=p {
        let k = m - i;
        let kf = k as f64;
        let ka = powers.get(k);
        let k1a = powers.get(k + 1);
        let w_step = coeffs.c_step * c_step_bracket(ka, k1a);
        let w_lin = coeffs.c_lin * c_lin_bracket(kf, ka, k1a, a);
        let w_quad = coeffs.c_quad * c_quad_bracket(kf, ka, k1a, a);
        let (f_next, f_cur, f_prev) = (&f_hist[i + 1], &f_hist[i], &f_hist[i - 1]);
        for (j, slot) in acc.iter_mut().enumerate() {
            *slot += w_step * f_next[j]
                + w_lin * (f_next[j] - f_cur[j])
                + w_quad * (f_next[j] - 2.0 * f_cur[j] + f_prev[j]);
        }
    }
}

/// Memory term Υ_p of the power-law corrector at step m. Requires p < m and
/// an f-history covering indices 0..=p+1; Υ_0 is the zero vector.
pub fn upsilon(alpha: f64, m: usize, p: usize, dt: f64, f_hist: &[Vec<f64>]) -> Result<Vec<f64>> {
    if alpha.is_nan() || alpha <= 0.0 || alpha > 1.0 {
        return Err(Error::Usage(format!(
            "upsilon requires alpha in (0, 1], got {alpha}"
        )));
    }
    if dt.is_nan() || dt <= 0.0 {
        return Err(Error::Usage(format!("upsilon requires dt > 0, got {dt}")));
    }
    if m == 0 || p >= m {
        return Err(Error::Usage(format!(
            "upsilon requires 0 <= p <= m-1, got p = {p}, m = {m}"
        )));
    }
    let dim = f_hist
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::Usage("upsilon requires a non-empty f history".into()))?;
    if p > 0 && f_hist.len() < p + 2 {
        return Err(Error::Usage(format!(
            "upsilon with p = {p} needs f history through index {}, got length {}",
            p + 1,
            f_hist.len()
        )));
    }
    let mut acc = vec![0.0; dim];
    if p == 0 {
        return Ok(acc);
    }
    let coeffs = ProductCoeffs::new(alpha, dt);
    let powers = PowerTable::new(alpha, m);
    upsilon_into(&coeffs, &powers, m, p, f_hist, &mut acc);
    Ok(acc)
}
