//! Benchmark calibration for loss data: maximum-likelihood fits, the
//! Wasserstein radius `delta0` between data and fit, and the ratios
//!
//! ```text
//! r(d, t)     = sup { E[(Y - t)+] : W_p(F_X, F_Y) <= d } / E[(X - t)+]
//! r_hat(d, t) = same numerator / E[(X_hat - t)+]
//! ```
//!
//! with `X` the fitted benchmark and `X_hat` the empirical distribution.

mod fit;
mod report;
mod wasserstein;

pub use fit::{fit_mle, Family, FitResult, MAX_ITERATIONS, SCORE_TOL};
pub use report::{
    analyze, even_grid, AnalyzeOptions, FamilyReport, RatioReport, RatioRow, Sweep, CSV_COLUMNS, DEFAULT_DELTA_MULTIPLIERS,
    DEFAULT_T_POINTS,
};
pub use wasserstein::{wasserstein_distance, Distance};

use crate::distributions::{EmpiricalSample, LossModel};
use crate::error::{check, check_finite, Error, Result};
use crate::uncertainty::{worst_mean_excess, UncertaintySpec};

/// `W_p` between the sample and its fitted benchmark.
pub fn delta0(sample: &EmpiricalSample, fit: &FitResult, p: f64) -> Result<Distance> {
    if !fit.converged {
        return Err(Error::Domain(format!(
            "{} fit did not converge after {} iterations",
            fit.family, fit.iterations
        )));
    }
    wasserstein_distance(&sample.clone().into(), &fit.model, p)
}

fn worst_numerator(benchmark: &LossModel, delta: f64, t: f64, p: f64) -> Result<f64> {
    if delta == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    let spec = UncertaintySpec::wasserstein(p, delta, benchmark.clone())?;
    Ok(worst_mean_excess(&spec, t)?.value)
}

/// `r(delta, t)`; exactly 1 at `delta = 0`.
pub fn ratio_r(benchmark: &LossModel, delta: f64, t: f64, p: f64) -> Result<f64> {
    check_finite("t", t)?;
    check(delta >= 0.0, "delta", delta, "radius must be nonnegative")?;
    let denominator = benchmark.upper_partial_expectation(t);
    if denominator <= 0.0 {
        return Err(Error::ZeroDenominator(format!(
            "benchmark mean excess vanishes at t = {t}"
        )));
    }
    if delta == 0.0 {
        return Ok(1.0);
    }
    Ok(worst_numerator(benchmark, delta, t, p)? / denominator)
}

/// `r_hat(delta, t)`, with the empirical mean excess as denominator.
pub fn ratio_r_hat(benchmark: &LossModel, sample: &EmpiricalSample, delta: f64, t: f64, p: f64) -> Result<f64> {
    check_finite("t", t)?;
    check(delta >= 0.0, "delta", delta, "radius must be nonnegative")?;
    let denominator = sample.upper_partial_expectation(t);
    if denominator <= 0.0 {
        return Err(Error::ZeroDenominator(format!(
            "empirical mean excess vanishes at t = {t} (sample maximum {})",
            sample.max()
        )));
    }
    Ok(worst_numerator(benchmark, delta, t, p)? / denominator)
}

/// Data quartiles `(VaR-_0.25, VaR-_0.5, VaR-_0.75)`.
pub fn quartiles(sample: &EmpiricalSample) -> Result<(f64, f64, f64)> {
    if sample.len() < 4 {
        return Err(Error::Domain(format!(
            "quartiles need at least 4 observations, found {}",
            sample.len()
        )));
    }
    Ok((sample.var_left(0.25), sample.var_left(0.5), sample.var_left(0.75)))
}

/// `(model quantile at (i - 1/2)/n, i-th order statistic)` pairs.
pub fn qq_points(sample: &EmpiricalSample, model: &LossModel) -> Vec<(f64, f64)> {
    let n = sample.len() as f64;
    sample
        .values()
        .iter()
        .enumerate()
        .map(|(i, &x)| (model.var_left((i as f64 + 0.5) / n), x))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_examples() {
        let p = LossModel::pareto(2.0).unwrap();
        assert_eq!(ratio_r(&p, 0.0, 4.0, 2.0).unwrap(), 1.0);
        let r = ratio_r(&p, 1.0, 4.0, 2.0).unwrap();
        assert!((r - 2.25).abs() < 1e-9, "{r}");
        let emp = LossModel::empirical(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let s = emp.as_empirical().unwrap();
        assert!((ratio_r_hat(&emp, s, 0.0, 2.5, 2.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(ratio_r_hat(&p, s, 0.1, 4.0, 2.0), Err(Error::ZeroDenominator(_))));
        assert!(matches!(ratio_r(&emp, 0.1, 5.0, 2.0), Err(Error::ZeroDenominator(_))));
    }

    #[test]
    fn quartile_examples() {
        let s = EmpiricalSample::new(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(quartiles(&s).unwrap(), (1.0, 2.0, 3.0));
        let shifted = EmpiricalSample::new(vec![11.0, 12.0, 13.0, 14.0]).unwrap();
        assert_eq!(quartiles(&shifted).unwrap(), (11.0, 12.0, 13.0));
        assert!(quartiles(&EmpiricalSample::new(vec![1.0, 2.0, 3.0]).unwrap()).is_err());
        let q1 = LossModel::lognormal(0.0, 1.0).unwrap().var_left(0.25);
        assert!((q1 - 0.50942).abs() < 1e-5);
    }

    #[test]
    fn delta0_of_own_model_is_zero() {
        let s = EmpiricalSample::new(vec![1.0, 3.0, 4.0]).unwrap();
        let own: LossModel = s.clone().into();
        assert_eq!(wasserstein_distance(&own, &s.clone().into(), 2.0).unwrap().value, 0.0);
    }
}
