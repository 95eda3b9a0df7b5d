//! The two directions of the ES / mean-excess duality.
//!
//! Forward: `ES_a(X) = min_t { t + E[(X - t)+] / (1 - a) }`, minimized on
//! `[VaR-_a, VaR+_a]`.
//!
//! Reverse: `E[(X - t)+] = max_a { (1 - a)(ES_a(X) - t) }`, maximized on
//! `[P(X < t), P(X <= t)]`, with `0 * inf = 0` at `a = 1`.
//!
//! For empirical models every objective here is piecewise linear in the
//! probability level with kinks at `k / n`, so the optimum is found by an
//! exact kink scan. Parametric models use golden-section search; optimizer
//! intervals are always reported in their closed form.

use serde::Serialize;

use crate::distributions::{EmpiricalSample, LossModel, ModelKind, ProbabilityInterval, QuantileInterval};
use crate::error::{check, check_finite, check_level, Result};
use crate::numeric;

/// Relative tolerance attached to every search-based value.
pub const REPORTED_TOLERANCE: f64 = 1e-8;

const LEVEL_TOL: f64 = 1e-10;
const GRID_NODES: usize = 64;

/// Optimal value, optimizer and the `(argument, objective)` evaluations that
/// produced them.
#[derive(Debug, Clone, Serialize)]
pub struct OptResult<O> {
    pub value: f64,
    pub optimizer: O,
    pub trace: Vec<(f64, f64)>,
    pub tolerance: f64,
}

/// `ES_alpha`. `ES_0` is the mean and `ES_1` the essential supremum.
pub fn es(model: &LossModel, alpha: f64) -> Result<f64> {
    check_level("alpha", alpha)?;
    if alpha == 1.0 {
        return Ok(model.ess_sup());
    }
    if alpha == 0.0 {
        return Ok(model.mean());
    }
    Ok(model.tail_integral(alpha) / (1.0 - alpha))
}

/// Left ES, `ES-_alpha`, the average of the quantile over `[0, alpha]`.
/// `ES-_0` is the essential infimum.
pub fn es_left(model: &LossModel, alpha: f64) -> Result<f64> {
    check_level("alpha", alpha)?;
    if alpha == 0.0 {
        return Ok(model.ess_inf());
    }
    if alpha == 1.0 {
        return Ok(model.mean());
    }
    Ok(model.left_integral(alpha) / alpha)
}

/// `t + E[(X - t)+] / (1 - alpha)`.
pub fn ru_objective(model: &LossModel, alpha: f64, t: f64) -> f64 {
    t + model.upper_partial_expectation(t) / (1.0 - alpha)
}

/// `g(alpha) = (1 - alpha)(ES_alpha - t)`, with `g(1) = 0`.
pub fn reverse_objective(model: &LossModel, alpha: f64, t: f64) -> f64 {
    if alpha >= 1.0 {
        return 0.0;
    }
    model.tail_integral(alpha) - (1.0 - alpha) * t
}

/// `alpha ES-_alpha + (1 - alpha) t`.
pub fn mean_min_objective(model: &LossModel, alpha: f64, t: f64) -> f64 {
    model.left_integral(alpha) + (1.0 - alpha) * t
}

/// `[P(X < t), P(X <= t)]`.
pub fn level_interval(model: &LossModel, t: f64) -> ProbabilityInterval {
    ProbabilityInterval {
        lo: model.cdf_strict(t),
        hi: model.cdf(t),
    }
}

/// ES through the minimization over thresholds.
pub fn es_via_ru(model: &LossModel, alpha: f64) -> Result<OptResult<QuantileInterval>> {
    check(
        alpha > 0.0 && alpha < 1.0,
        "alpha",
        alpha,
        "must lie strictly inside (0, 1)",
    )?;
    let optimizer = QuantileInterval {
        lo: model.var_left(alpha),
        hi: model.var_right(alpha),
    };
    let objective = |t: f64| ru_objective(model, alpha, t);
    let (value, trace) = match model.kind() {
        ModelKind::Empirical(sample) => {
            // the objective is piecewise linear with kinks at the atoms
            let trace: Vec<(f64, f64)> = sample.atoms().into_iter().map(|t| (t, objective(t))).collect();
            let value = trace.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
            (value, trace)
        }
        ModelKind::Parametric(_) => {
            let lo = model.var_left((alpha - 0.49).max(1e-6));
            let hi = model.var_right((alpha + 0.49).min(1.0 - 1e-6));
            let tol = LEVEL_TOL * (1.0 + lo.abs().max(hi.abs()));
            let s = numeric::golden_min(objective, lo, hi, tol);
            (s.value, s.trace)
        }
    };
    Ok(OptResult {
        value,
        optimizer,
        trace,
        tolerance: REPORTED_TOLERANCE,
    })
}

/// Maximizes a function of the probability level over [0, 1]. `kink` gives
/// the objective at `k / n` for empirical models, where the scan is exact.
pub(crate) fn maximize_level<F, K>(model: &LossModel, mut f: F, kink: K) -> numeric::Search
where
    F: FnMut(f64) -> f64,
    K: Fn(usize) -> f64,
{
    match model.kind() {
        ModelKind::Empirical(sample) => {
            let n = sample.len();
            let mut best = (0.0, f64::NEG_INFINITY);
            let trace: Vec<(f64, f64)> = (0..=n)
                .map(|k| {
                    let a = k as f64 / n as f64;
                    let v = kink(k);
                    if v > best.1 {
                        best = (a, v);
                    }
                    (a, v)
                })
                .collect();
            numeric::Search {
                arg: best.0,
                value: best.1,
                trace,
            }
        }
        ModelKind::Parametric(_) => numeric::grid_golden_max(&mut f, 0.0, 1.0, GRID_NODES, LEVEL_TOL),
    }
}

/// Mean excess `E[(X - t)+]` through the maximization over ES levels.
pub fn mean_excess_via_reverse(model: &LossModel, t: f64) -> Result<OptResult<ProbabilityInterval>> {
    check_finite("t", t)?;
    let kinks = model.as_empirical().map(|x| reverse_kinks(x, t)).unwrap_or_default();
    let s = maximize_level(model, |a| reverse_objective(model, a, t), |k| kinks[k]);
    Ok(OptResult {
        value: s.value,
        optimizer: level_interval(model, t),
        trace: s.trace,
        tolerance: REPORTED_TOLERANCE,
    })
}

/// `E[X ^ t]` as the minimum of `alpha ES-_alpha + (1 - alpha) t`.
pub fn mean_min_via_reverse(model: &LossModel, t: f64) -> Result<OptResult<ProbabilityInterval>> {
    check_finite("t", t)?;
    let s = maximize_level(
        model,
        |a| -mean_min_objective(model, a, t),
        |k| {
            let sample = model.as_empirical().expect("kink scan on empirical model");
            let n = sample.len();
            -(sample.left_integral_at_rank(k) + ((n - k) as f64 / n as f64) * t)
        },
    );
    Ok(OptResult {
        value: -s.value,
        optimizer: level_interval(model, t),
        trace: s.trace.into_iter().map(|(a, v)| (a, -v)).collect(),
        tolerance: REPORTED_TOLERANCE,
    })
}

/// Reverse objective at every kink `k / n`, `k = 0..=n`, of an empirical
/// model: `(1/n) sum_{i > k} (x_(i) - t)`. Summing the centered terms from
/// the top keeps the value exactly zero when no atom exceeds `t`.
pub(crate) fn reverse_kinks(sample: &EmpiricalSample, t: f64) -> Vec<f64> {
    let x = sample.values();
    let n = x.len();
    let mut out = vec![0.0; n + 1];
    let mut acc = 0.0;
    for k in (0..n).rev() {
        acc += x[k] - t;
        out[k] = acc / n as f64;
    }
    out
}
