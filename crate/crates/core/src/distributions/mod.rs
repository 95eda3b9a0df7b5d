//! One-dimensional loss distributions.
//!
//! A [`LossModel`] is either a validated parametric family or an
//! [`EmpiricalSample`]. Every model exposes the right-continuous CDF, the
//! strict CDF `P(X < t)`, the left and right quantiles
//!
//! ```text
//! VaR-_a = inf { t : P(X <= t) >= a },   VaR+_a = inf { t : P(X <= t) > a }
//! ```
//!
//! and the tail integrals from which ES and the mean excess function are
//! built.

mod empirical;
mod parametric;
mod spec;

use std::fmt;

pub use empirical::{parse_losses, EmpiricalSample};
pub use parametric::Parametric;
pub use spec::ModelSpec;

use serde::Serialize;

use crate::error::{check, Result};

/// Closed subinterval of [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbabilityInterval {
    pub lo: f64,
    pub hi: f64,
}

impl ProbabilityInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        check(
            (0.0..=1.0).contains(&lo) && lo <= hi && hi <= 1.0,
            "lo",
            lo,
            "probability interval needs 0 <= lo <= hi <= 1",
        )?;
        Ok(ProbabilityInterval { lo, hi })
    }

    pub fn contains(&self, a: f64) -> bool {
        self.lo <= a && a <= self.hi
    }
}

/// Closed interval of loss values; `hi` may be `+inf` at level 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantileInterval {
    pub lo: f64,
    pub hi: f64,
}

impl QuantileInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        check(lo <= hi, "lo", lo, "quantile interval needs lo <= hi")?;
        Ok(QuantileInterval { lo, hi })
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelKind {
    Parametric(Parametric),
    Empirical(EmpiricalSample),
}

/// An integrable one-dimensional loss distribution. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct LossModel {
    kind: ModelKind,
}

impl LossModel {
    pub fn parametric(p: Parametric) -> Result<Self> {
        p.validate()?;
        Ok(LossModel {
            kind: ModelKind::Parametric(p),
        })
    }

    pub fn pareto(theta: f64) -> Result<Self> {
        Self::parametric(Parametric::Pareto { theta })
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        Self::parametric(Parametric::Exponential { rate })
    }

    pub fn normal(mu: f64, sigma: f64) -> Result<Self> {
        Self::parametric(Parametric::Normal { mu, sigma })
    }

    pub fn student_t(nu: f64, loc: f64, scale: f64) -> Result<Self> {
        Self::parametric(Parametric::StudentT { nu, loc, scale })
    }

    pub fn lognormal(mu: f64, sigma: f64) -> Result<Self> {
        Self::parametric(Parametric::Lognormal { mu, sigma })
    }

    pub fn weibull(shape: f64, scale: f64) -> Result<Self> {
        Self::parametric(Parametric::Weibull { shape, scale })
    }

    pub fn gamma(shape: f64, rate: f64) -> Result<Self> {
        Self::parametric(Parametric::Gamma { shape, rate })
    }

    pub fn empirical(values: Vec<f64>) -> Result<Self> {
        Ok(EmpiricalSample::new(values)?.into())
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn as_empirical(&self) -> Option<&EmpiricalSample> {
        match &self.kind {
            ModelKind::Empirical(s) => Some(s),
            ModelKind::Parametric(_) => None,
        }
    }

    pub fn as_parametric(&self) -> Option<&Parametric> {
        match &self.kind {
            ModelKind::Parametric(p) => Some(p),
            ModelKind::Empirical(_) => None,
        }
    }

    /// `P(X <= t)`.
    pub fn cdf(&self, t: f64) -> f64 {
        match &self.kind {
            ModelKind::Parametric(p) => p.cdf(t),
            ModelKind::Empirical(s) => s.cdf(t),
        }
    }

    /// `P(X < t)`; differs from [`cdf`](Self::cdf) only at atoms.
    pub fn cdf_strict(&self, t: f64) -> f64 {
        match &self.kind {
            ModelKind::Parametric(p) => p.cdf(t),
            ModelKind::Empirical(s) => s.cdf_strict(t),
        }
    }

    /// Left quantile `VaR-_alpha`; `-inf` at `alpha = 0`.
    pub fn var_left(&self, alpha: f64) -> f64 {
        if alpha.is_nan() {
            return f64::NAN;
        }
        match &self.kind {
            ModelKind::Parametric(p) => {
                if alpha <= 0.0 {
                    f64::NEG_INFINITY
                } else if alpha >= 1.0 {
                    f64::INFINITY
                } else {
                    p.quantile(alpha)
                }
            }
            ModelKind::Empirical(s) => s.var_left(alpha),
        }
    }

    /// Right quantile `VaR+_alpha`; `+inf` at `alpha = 1`.
    pub fn var_right(&self, alpha: f64) -> f64 {
        if alpha.is_nan() {
            return f64::NAN;
        }
        match &self.kind {
            ModelKind::Parametric(p) => {
                if alpha <= 0.0 {
                    p.ess_inf()
                } else if alpha >= 1.0 {
                    f64::INFINITY
                } else {
                    p.quantile(alpha)
                }
            }
            ModelKind::Empirical(s) => s.var_right(alpha),
        }
    }

    /// Essential infimum, `VaR+_0`.
    pub fn ess_inf(&self) -> f64 {
        self.var_right(0.0)
    }

    /// Essential supremum, `VaR-_1`.
    pub fn ess_sup(&self) -> f64 {
        self.var_left(1.0)
    }

    pub fn mean(&self) -> f64 {
        match &self.kind {
            ModelKind::Parametric(p) => p.mean(),
            ModelKind::Empirical(s) => s.mean(),
        }
    }

    /// Mean excess function `E[(X - t)+]`, computed directly from the
    /// distribution (closed form, survival quadrature, or a finite sum).
    pub fn upper_partial_expectation(&self, t: f64) -> f64 {
        match &self.kind {
            ModelKind::Parametric(p) => p.upper_partial_expectation(t),
            ModelKind::Empirical(s) => s.upper_partial_expectation(t),
        }
    }

    /// `int_alpha^1 VaR-_beta dbeta`, i.e. `(1 - alpha) ES_alpha` with the
    /// convention that the product vanishes at `alpha = 1`.
    pub fn tail_integral(&self, alpha: f64) -> f64 {
        match &self.kind {
            ModelKind::Parametric(p) => p.tail_integral(alpha),
            ModelKind::Empirical(s) => s.tail_integral(alpha),
        }
    }

    /// `int_0^alpha VaR-_beta dbeta`, i.e. `alpha ES-_alpha`.
    pub fn left_integral(&self, alpha: f64) -> f64 {
        match &self.kind {
            ModelKind::Parametric(p) => {
                if alpha <= 0.0 {
                    0.0
                } else {
                    p.mean() - p.tail_integral(alpha)
                }
            }
            ModelKind::Empirical(s) => s.left_integral(alpha),
        }
    }

    /// Whether `E|X|^p` is finite.
    pub fn has_finite_moment(&self, p: f64) -> bool {
        match &self.kind {
            ModelKind::Parametric(m) => m.has_finite_moment(p),
            ModelKind::Empirical(_) => true,
        }
    }

    /// Maps uniforms through the left quantile. Intended for simulation in tests.
    pub fn quantile_sample(&self, uniforms: &[f64]) -> Vec<f64> {
        uniforms.iter().map(|&u| self.var_left(u)).collect()
    }
}

impl From<EmpiricalSample> for LossModel {
    fn from(s: EmpiricalSample) -> Self {
        LossModel {
            kind: ModelKind::Empirical(s),
        }
    }
}

impl fmt::Display for LossModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ModelKind::Parametric(p) => {
                write!(f, "{}:", p.name())?;
                for (i, (k, v)) in p.parameters().iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{k}={v}")?;
                }
                Ok(())
            }
            ModelKind::Empirical(s) => write!(f, "empirical:n={}", s.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pareto_basics() {
        let m = LossModel::pareto(2.0).unwrap();
        assert_eq!(m.cdf(2.0), 0.75);
        assert!((m.var_left(0.75) - 2.0).abs() < 1e-15);
        assert_eq!(m.mean(), 2.0);
        assert!((m.upper_partial_expectation(2.0) - 0.5).abs() < 1e-15);
        assert!((m.upper_partial_expectation(0.5) - 1.5).abs() < 1e-15);
        assert_eq!(m.cdf(f64::NEG_INFINITY), 0.0);
        assert_eq!(m.var_right(0.0), 1.0);
        assert_eq!(m.var_left(0.0), f64::NEG_INFINITY);
        assert_eq!(m.var_right(1.0), f64::INFINITY);
    }

    #[test]
    fn normal_mean_and_quantile_coincidence() {
        let m = LossModel::normal(5.0, 1.0).unwrap();
        assert_eq!(m.mean(), 5.0);
        for &a in &[0.1, 0.5, 0.9] {
            assert_eq!(m.var_left(a), m.var_right(a));
        }
    }

    #[test]
    fn constructors_validate() {
        assert!(LossModel::pareto(0.9).is_err());
        assert!(LossModel::student_t(0.5, 0.0, 1.0).is_err());
        assert!(LossModel::weibull(1.0, 0.0).is_err());
        assert!(LossModel::empirical(vec![]).is_err());
        assert!(ProbabilityInterval::new(0.6, 0.4).is_err());
        assert!(QuantileInterval::new(1.0, f64::INFINITY).is_ok());
    }

    #[test]
    fn display_round_trips_through_spec() {
        let m = LossModel::gamma(2.0, 0.5).unwrap();
        let spec: ModelSpec = m.to_string().parse().unwrap();
        assert_eq!(spec.resolve().unwrap(), m);
    }
}
