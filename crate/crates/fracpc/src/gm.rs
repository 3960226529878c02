//! Activator-inhibitor case study: the two-species kinetics, its unique
//! positive equilibrium, the Jacobian spectrum, and the order-dependent
//! stability classification.
//!
//! A fractional-order equilibrium is asymptotically stable when every
//! eigenvalue satisfies |arg λ| > απ/2. The classification below walks the
//! discriminant/trace case tree and, in the oscillatory trace-positive
//! branch, reports the quotient 4·det/tr² next to tan²(απ/2) + 1 — the two
//! orderings are equivalent because tan²|arg λ| + 1 = 4·det/tr² there.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{DerivativeKind, FractionalIvp, Rhs};
use std::sync::Arc;

/// Kinetic constants and initial concentrations; all strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GmParams {
    pub rho0: f64,
    pub rho: f64,
    pub c: f64,
    pub mu: f64,
    pub cprime: f64,
    pub rhoprime: f64,
    pub nu: f64,
    pub a0: f64,
    pub h0: f64,
}

impl Default for GmParams {
    /// The parameter set used throughout the case study.
    fn default() -> Self {
        Self {
            rho0: 1.0,
            rho: 1.0,
            c: 3.0,
            mu: 4.0,
            cprime: 1.0,
            rhoprime: 1.0,
            nu: 2.0,
            a0: 2.0,
            h0: 3.0,
        }
    }
}

impl GmParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("rho0", self.rho0),
            ("rho", self.rho),
            ("c", self.c),
            ("mu", self.mu),
            ("cprime", self.cprime),
            ("rhoprime", self.rhoprime),
            ("nu", self.nu),
            ("a0", self.a0),
            ("h0", self.h0),
        ];
        for (name, v) in fields {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Domain(format!(
                    "parameter {name} must be strictly positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

#[inline]
fn rhs_raw(state: &[f64], p: &GmParams) -> [f64; 2] {
    let (a, h) = (state[0], state[1]);
    [
        p.rho0 * p.rho + p.c * p.rho * a * a / h - p.mu * a,
        p.cprime * p.rhoprime * a * a - p.nu * h,
    ]
}

/// Kinetics (da/dt-like, dh/dt-like) at the given concentrations. The
/// activator term divides by h, so h = 0 is rejected rather than clamped;
/// a trajectory crossing zero means the step size is too coarse.
pub fn rhs(_t: f64, state: &[f64; 2], p: &GmParams) -> Result<[f64; 2]> {
    if state[1] == 0.0 {
        return Err(Error::Domain(
            "inhibitor concentration h = 0: a^2/h is undefined".to_string(),
        ));
    }
    Ok(rhs_raw(state, p))
}

/// The unique positive equilibrium (a*, h*).
pub fn equilibrium(p: &GmParams) -> [f64; 2] {
    let a_star = (p.rho0 * p.rho * p.cprime * p.rhoprime + p.c * p.rho * p.nu)
        / (p.mu * p.cprime * p.rhoprime);
    let h_star = p.cprime * p.rhoprime / p.nu * a_star * a_star;
    [a_star, h_star]
}

/// Jacobian of the kinetics evaluated at the equilibrium.
pub fn jacobian(p: &GmParams) -> [[f64; 2]; 2] {
    let denom = p.c * p.nu + p.cprime * p.rhoprime * p.rho0;
    [
        [
            2.0 * p.c * p.mu * p.nu / denom - p.mu,
            -(p.c / p.rho) * (p.mu * p.nu / denom).powi(2),
        ],
        [2.0 * p.rho * denom / p.mu, -p.nu],
    ]
}

/// Closed-form trace and determinant of the equilibrium Jacobian;
/// det is exactly μν.
pub fn trace_det(p: &GmParams) -> (f64, f64) {
    let tr = 2.0 * p.mu * p.nu * p.c / (p.nu * p.c + p.rho0 * p.rhoprime * p.cprime) - p.mu - p.nu;
    (tr, p.mu * p.nu)
}

/// Eigenvalues λ = (tr ± √(tr² − 4·det))/2, complex when the discriminant is
/// negative.
pub fn eigenvalues(p: &GmParams) -> (Complex64, Complex64) {
    let (tr, det) = trace_det(p);
    let disc = tr * tr - 4.0 * det;
    if disc >= 0.0 {
        let root = disc.sqrt();
        (
            Complex64::new((tr + root) / 2.0, 0.0),
            Complex64::new((tr - root) / 2.0, 0.0),
        )
    } else {
        let imag = (-disc).sqrt() / 2.0;
        (
            Complex64::new(tr / 2.0, imag),
            Complex64::new(tr / 2.0, -imag),
        )
    }
}

/// Stability of the equilibrium for a given order α.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    AsymptoticallyStable,
    Unstable,
    /// Within tolerance of a case boundary; no side is guessed.
    Marginal,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::AsymptoticallyStable => "asymptotically_stable",
            Verdict::Unstable => "unstable",
            Verdict::Marginal => "marginal",
        }
    }
}

/// Which case of the classification fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityBranch {
    DiscZeroTraceNegative,
    DiscZeroTracePositive,
    DiscZeroTraceZero,
    DiscPositiveTraceNegative,
    DiscPositiveTracePositive,
    OscillatoryTraceZero,
    OscillatoryTraceNegative,
    /// Trace positive with complex eigenvalues: |arg λ| against απ/2,
    /// reported through the quotient form.
    OscillatoryThresholdStable,
    OscillatoryThresholdUnstable,
    OscillatoryThresholdMarginal,
}

impl StabilityBranch {
    pub fn name(&self) -> &'static str {
        match self {
            Self::DiscZeroTraceNegative => "discriminant_zero.trace_negative",
            Self::DiscZeroTracePositive => "discriminant_zero.trace_positive",
            Self::DiscZeroTraceZero => "discriminant_zero.trace_zero",
            Self::DiscPositiveTraceNegative => "discriminant_positive.trace_negative",
            Self::DiscPositiveTracePositive => "discriminant_positive.trace_positive",
            Self::OscillatoryTraceZero => "oscillatory.trace_zero",
            Self::OscillatoryTraceNegative => "oscillatory.trace_negative",
            Self::OscillatoryThresholdStable => "oscillatory.threshold_stable",
            Self::OscillatoryThresholdUnstable => "oscillatory.threshold_unstable",
            Self::OscillatoryThresholdMarginal => "oscillatory.threshold_marginal",
        }
    }
}

/// Full classification result. `threshold_lhs`/`threshold_rhs` are populated
/// only in the oscillatory trace-positive branch: lhs = 4·det/tr²
/// (= tan²|arg λ| + 1), rhs = tan²(απ/2) + 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityVerdict {
    pub verdict: Verdict,
    pub branch: StabilityBranch,
    pub eigenvalues: (Complex64, Complex64),
    pub threshold_lhs: Option<f64>,
    pub threshold_rhs: Option<f64>,
}

/// Classify the equilibrium at order α. Sign tests treat quantities within
/// `tol` (relative to max(tr², 4·det)) of zero as zero and return `Marginal`
/// instead of guessing a side; the same `tol` bounds the angle comparison.
pub fn classify(alpha: f64, p: &GmParams, tol: f64) -> Result<StabilityVerdict> {
    if alpha.is_nan() || alpha <= 0.0 || alpha > 1.0 {
        return Err(Error::Domain(format!(
            "classification requires alpha in (0, 1], got {alpha}"
        )));
    }
    p.validate()?;
    let (tr, det) = trace_det(p);
    let disc = tr * tr - 4.0 * det;
    let scale = (tr * tr).max(4.0 * det.abs()).max(f64::MIN_POSITIVE);
    let eig = eigenvalues(p);
    let trace_zero = tr.abs() <= tol * scale.sqrt();

    let (verdict, branch) = if disc.abs() <= tol * scale {
        // Repeated real root tr/2.
        if trace_zero {
            (Verdict::Marginal, StabilityBranch::DiscZeroTraceZero)
        } else if tr < 0.0 {
            (
                Verdict::AsymptoticallyStable,
                StabilityBranch::DiscZeroTraceNegative,
            )
        } else {
            (Verdict::Unstable, StabilityBranch::DiscZeroTracePositive)
        }
    } else if disc > 0.0 {
        // Distinct real roots; det > 0 keeps them on one side of zero.
        if tr > 0.0 {
            (
                Verdict::Unstable,
                StabilityBranch::DiscPositiveTracePositive,
            )
        } else {
            (
                Verdict::AsymptoticallyStable,
                StabilityBranch::DiscPositiveTraceNegative,
            )
        }
    } else if trace_zero {
        // |arg λ| = π/2: stable strictly inside (0, 1), boundary at α = 1.
        if alpha < 1.0 {
            (
                Verdict::AsymptoticallyStable,
                StabilityBranch::OscillatoryTraceZero,
            )
        } else {
            (Verdict::Marginal, StabilityBranch::OscillatoryTraceZero)
        }
    } else if tr < 0.0 {
        (
            Verdict::AsymptoticallyStable,
            StabilityBranch::OscillatoryTraceNegative,
        )
    } else {
        // Oscillatory with positive trace: the α-dependent case.
        let arg = eig.0.im.atan2(eig.0.re).abs();
        let margin = arg - alpha * std::f64::consts::FRAC_PI_2;
        let lhs = 4.0 * det / (tr * tr);
        let rhs = (alpha * std::f64::consts::FRAC_PI_2).tan().powi(2) + 1.0;
        let (verdict, branch) = if margin.abs() <= tol {
            (
                Verdict::Marginal,
                StabilityBranch::OscillatoryThresholdMarginal,
            )
        } else if margin > 0.0 {
            (
                Verdict::AsymptoticallyStable,
                StabilityBranch::OscillatoryThresholdStable,
            )
        } else {
            (
                Verdict::Unstable,
                StabilityBranch::OscillatoryThresholdUnstable,
            )
        };
        return Ok(StabilityVerdict {
            verdict,
            branch,
            eigenvalues: eig,
            threshold_lhs: Some(lhs),
            threshold_rhs: Some(rhs),
        });
    };

    Ok(StabilityVerdict {
        verdict,
        branch,
        eigenvalues: eig,
        threshold_lhs: None,
        threshold_rhs: None,
    })
}

/// Package the kinetics as an initial-value problem starting from (a0, h0).
pub fn ivp(p: &GmParams, kind: DerivativeKind, alpha: f64) -> Result<FractionalIvp> {
    p.validate()?;
    let params = *p;
    let f: Rhs = Arc::new(move |_t, y, out| {
        let v = rhs_raw(y, &params);
        out[0] = v[0];
        out[1] = v[1];
    });
    FractionalIvp::new(2, f, vec![p.a0, p.h0], kind, alpha)
}
