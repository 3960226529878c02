//! Core problem, grid, and trajectory types shared by all schemes.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard cap on the number of grid steps; the fractional schemes are O(N²),
/// so an accidental huge N would hang for hours.
pub const MAX_STEPS: usize = 10_000_000;

/// Which derivative the initial-value problem is posed with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DerivativeKind {
    /// Ordinary first derivative (α is fixed to 1).
    Classical,
    /// Power-law kernel, full memory.
    Caputo,
    /// Exponential kernel; local term plus an ordinary integral.
    CaputoFabrizio,
    /// Mittag-Leffler kernel; local term plus a power-law integral.
    AtanganaBaleanu,
}

impl DerivativeKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(Self::Classical),
            "caputo" => Ok(Self::Caputo),
            "cf" => Ok(Self::CaputoFabrizio),
            "abc" => Ok(Self::AtanganaBaleanu),
            other => Err(Error::UnknownName {
                kind: "derivative kind",
                name: other.to_string(),
                valid: "classical, caputo, cf, abc".to_string(),
            }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Classical => "classical",
            Self::Caputo => "caputo",
            Self::CaputoFabrizio => "cf",
            Self::AtanganaBaleanu => "abc",
        }
    }
}

impl fmt::Display for DerivativeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Right-hand side f(t, y) of the differential equation. Writes f into `out`
/// (same length as `y`); non-finite outputs are caught by the solve driver.
pub type Rhs = Arc<dyn Fn(f64, &[f64], &mut [f64]) + Send + Sync>;

/// An initial-value problem D^α y = f(t, y), y(0) = y0, for one of the
/// supported derivative kinds.
#[derive(Clone)]
pub struct FractionalIvp {
    pub dim: usize,
    pub rhs: Rhs,
    pub y0: Vec<f64>,
    pub kind: DerivativeKind,
    pub alpha: f64,
}

impl FractionalIvp {
    pub fn new(
        dim: usize,
        rhs: Rhs,
        y0: Vec<f64>,
        kind: DerivativeKind,
        alpha: f64,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Config("state dimension must be positive".into()));
        }
        if y0.len() != dim {
            return Err(Error::Config(format!(
                "initial state has length {}, expected {dim}",
                y0.len()
            )));
        }
        if alpha.is_nan() || alpha <= 0.0 || alpha > 1.0 {
            return Err(Error::Config(format!(
                "alpha must be in (0, 1], got {alpha}"
            )));
        }
        if kind == DerivativeKind::Classical && alpha != 1.0 {
            return Err(Error::Config(format!(
                "classical derivative requires alpha = 1, got {alpha}"
            )));
        }
        if y0.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("initial state must be finite".into()));
        }
        Ok(Self {
            dim,
            rhs,
            y0,
            kind,
            alpha,
        })
    }

    /// Evaluate the right-hand side into a fresh vector.
    pub fn eval(&self, t: f64, y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        (self.rhs)(t, y, &mut out);
        out
    }
}

impl fmt::Debug for FractionalIvp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FractionalIvp")
            .field("dim", &self.dim)
            .field("y0", &self.y0)
            .field("kind", &self.kind)
            .field("alpha", &self.alpha)
            .finish_non_exhaustive()
    }
}

/// Uniform time grid t_m = m·Δt, m = 0..=N.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformGrid {
    dt: f64,
    n_steps: usize,
}

impl UniformGrid {
    /// Build a grid directly from a step size and step count.
    pub fn with_steps(dt: f64, n_steps: usize) -> Result<Self> {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(Error::Config(format!("dt must be positive, got {dt}")));
        }
        if n_steps == 0 {
            return Err(Error::Config("grid needs at least one step".into()));
        }
        if n_steps > MAX_STEPS {
            return Err(Error::Config(format!(
                "grid of {n_steps} steps exceeds the {MAX_STEPS} step guard"
            )));
        }
        Ok(Self { dt, n_steps })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Number of steps N; the grid has N + 1 nodes.
    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    /// Node t_m = m·Δt, computed by multiplication so nodes carry no
    /// accumulated summation drift.
    pub fn node(&self, m: usize) -> f64 {
        m as f64 * self.dt
    }

    pub fn t_end(&self) -> f64 {
        self.node(self.n_steps)
    }
}

/// Build the grid covering [0, t_end] with step dt. The span must be an
/// integer multiple of dt; a few ulps of slack absorb decimal-literal
/// rounding (0.7/0.1 lands one ulp under 7).
pub fn make_grid(dt: f64, t_end: f64) -> Result<UniformGrid> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::Config(format!("dt must be positive, got {dt}")));
    }
    if !t_end.is_finite() || t_end < dt {
        return Err(Error::Config(format!(
            "t_end must be at least dt, got t_end = {t_end}, dt = {dt}"
        )));
    }
    let ratio = t_end / dt;
    let n = ratio.round();
    if (ratio - n).abs() > 4.0 * f64::EPSILON * n.max(1.0) {
        return Err(Error::Config(format!(
            "span not an integer multiple of dt (t_end/dt = {ratio})"
        )));
    }
    UniformGrid::with_steps(dt, n as usize)
}

/// A computed solution: states y_m at every node plus the cached
/// right-hand-side values f(t_m, y_m).
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub grid: UniformGrid,
    pub states: Vec<Vec<f64>>,
    pub f_history: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn dim(&self) -> usize {
        self.states.first().map_or(0, Vec::len)
    }

    /// State at node m.
    pub fn state(&self, m: usize) -> &[f64] {
        &self.states[m]
    }

    /// Cached f(t_m, y_m).
    pub fn f_at(&self, m: usize) -> &[f64] {
        &self.f_history[m]
    }
}

/// Which stepping rule the driver applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeId {
    /// Predict-evaluate-correct-evaluate with the improved predictor.
    ProposedPc,
    /// The improved explicit predictor run on its own.
    ImprovedAs,
    /// The original three-point explicit rule (classical kind only).
    ClassicalAs,
    /// Two-step Adams-Bashforth baseline (classical kind only).
    TwoStepAb,
}

impl SchemeId {
    pub fn name(&self) -> &'static str {
        match self {
            Self::ProposedPc => "ppc",
            Self::ImprovedAs => "ias",
            Self::ClassicalAs => "as",
            Self::TwoStepAb => "ab2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ppc" => Ok(Self::ProposedPc),
            "ias" => Ok(Self::ImprovedAs),
            "as" => Ok(Self::ClassicalAs),
            "ab2" => Ok(Self::TwoStepAb),
            other => Err(Error::UnknownName {
                kind: "scheme",
                name: other.to_string(),
                valid: "ppc, ias, as, ab2".to_string(),
            }),
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Solver options beyond the problem statement itself.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub scheme: SchemeId,
    /// How many times the corrector is applied per step (PECE repeats).
    pub corrector_sweeps: usize,
    /// Solve aborts once any state component exceeds this magnitude.
    pub divergence_guard: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            scheme: SchemeId::ProposedPc,
            corrector_sweeps: 1,
            divergence_guard: 1e12,
        }
    }
}

impl SolverConfig {
    pub fn new(scheme: SchemeId) -> Self {
        Self {
            scheme,
            ..Self::default()
        }
    }

    pub fn validate(&self, kind: DerivativeKind) -> Result<()> {
        if self.corrector_sweeps == 0 {
            return Err(Error::Config("corrector_sweeps must be at least 1".into()));
        }
        if self.divergence_guard.is_nan() || self.divergence_guard <= 0.0 {
            return Err(Error::Config("divergence_guard must be positive".into()));
        }
        match self.scheme {
            SchemeId::ClassicalAs | SchemeId::TwoStepAb if kind != DerivativeKind::Classical => {
                Err(Error::Config(format!(
                    "scheme '{}' is only defined for the classical derivative",
                    self.scheme
                )))
            }
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_grid_examples() {
        assert_eq!(make_grid(1.0 / 16.0, 1.0).unwrap().n_steps(), 16);
        assert_eq!(make_grid(0.5, 0.5).unwrap().n_steps(), 1);
        assert_eq!(make_grid(1.0 / 700.0, 30.0).unwrap().n_steps(), 21000);
    }

    #[test]
    fn make_grid_rejects_non_multiple_span() {
        let err = make_grid(0.3, 1.0).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
        assert!(err.to_string().contains("not an integer multiple"));
    }

    #[test]
    fn make_grid_accepts_decimal_near_multiples() {
        // 0.7/0.1 is one ulp under 7 in binary.
        assert_eq!(make_grid(0.1, 0.7).unwrap().n_steps(), 7);
    }

    #[test]
    fn make_grid_size_guard() {
        let err = make_grid(1e-9, 100.0).unwrap_err();
        assert!(err.to_string().contains("guard"));
    }

    #[test]
    fn make_grid_bad_inputs() {
        assert!(make_grid(0.0, 1.0).is_err());
        assert!(make_grid(-0.1, 1.0).is_err());
        assert!(make_grid(0.5, 0.25).is_err());
        assert!(make_grid(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn grid_nodes_are_exact_multiples() {
        let g = make_grid(1.0 / 16.0, 1.0).unwrap();
        for m in 0..=g.n_steps() {
            assert_eq!(g.node(m), m as f64 * g.dt());
        }
        assert_eq!(g.t_end(), 1.0);
    }

    #[test]
    fn ivp_validation() {
        let rhs: Rhs = Arc::new(|_t, _y, out| out[0] = 0.0);
        assert!(FractionalIvp::new(1, rhs.clone(), vec![1.0], DerivativeKind::Caputo, 0.5).is_ok());
        // classical demands alpha = 1
        assert!(
            FractionalIvp::new(1, rhs.clone(), vec![1.0], DerivativeKind::Classical, 0.5).is_err()
        );
        // alpha range
        assert!(
            FractionalIvp::new(1, rhs.clone(), vec![1.0], DerivativeKind::Caputo, 0.0).is_err()
        );
        assert!(
            FractionalIvp::new(1, rhs.clone(), vec![1.0], DerivativeKind::Caputo, 1.1).is_err()
        );
        // dimension mismatch
        assert!(FractionalIvp::new(2, rhs, vec![1.0], DerivativeKind::Caputo, 0.5).is_err());
    }

    #[test]
    fn scheme_kind_compatibility() {
        let cfg = SolverConfig::new(SchemeId::TwoStepAb);
        assert!(cfg.validate(DerivativeKind::Classical).is_ok());
        assert!(cfg.validate(DerivativeKind::Caputo).is_err());
        let cfg = SolverConfig::new(SchemeId::ClassicalAs);
        assert!(cfg.validate(DerivativeKind::CaputoFabrizio).is_err());
        let cfg = SolverConfig::new(SchemeId::ProposedPc);
        assert!(cfg.validate(DerivativeKind::AtanganaBaleanu).is_ok());
    }

    #[test]
    fn parse_names() {
        assert_eq!(SchemeId::parse("ppc").unwrap(), SchemeId::ProposedPc);
        assert!(SchemeId::parse("bogus").is_err());
        assert_eq!(
            DerivativeKind::parse("abc").unwrap(),
            DerivativeKind::AtanganaBaleanu
        );
        assert!(DerivativeKind::parse("weyl").is_err());
    }
}
