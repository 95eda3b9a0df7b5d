//! Worst-case ES and worst-case mean excess over two uncertainty sets:
//!
//! * the moment ball `{X : E[X] = m, E|X - m|^p <= v^p}`, `p > 1`;
//! * the Wasserstein ball `{Y : W_p(F_X, F_Y) <= delta}` around a benchmark.
//!
//! Both have closed-form worst-case ES curves. The worst-case mean excess is
//! obtained by exchanging the supremum over the set with the maximum over
//! levels in the reverse formula, leaving a one-dimensional concave
//! maximization over `alpha`.

use crate::distributions::{LossModel, ModelKind, ProbabilityInterval};
use crate::dual::{self, OptResult, REPORTED_TOLERANCE};
use crate::error::{check, check_finite, check_level, Error, Result};
use crate::numeric::{self, Search};

const LEVEL_TOL: f64 = 1e-12;
const GRID_NODES: usize = 128;

#[derive(Debug, Clone, PartialEq)]
pub enum UncertaintySpec {
    MomentBall { p: f64, m: f64, v: f64 },
    WassersteinBall { p: f64, delta: f64, benchmark: LossModel },
}

impl UncertaintySpec {
    pub fn moment(p: f64, m: f64, v: f64) -> Result<Self> {
        let spec = UncertaintySpec::MomentBall { p, m, v };
        spec.validate()?;
        Ok(spec)
    }

    pub fn wasserstein(p: f64, delta: f64, benchmark: LossModel) -> Result<Self> {
        let spec = UncertaintySpec::WassersteinBall { p, delta, benchmark };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            UncertaintySpec::MomentBall { p, m, v } => {
                check(p.is_finite() && *p > 1.0, "p", *p, "moment order must exceed 1")?;
                check_finite("m", *m)?;
                check(v.is_finite() && *v >= 0.0, "v", *v, "must be nonnegative")
            }
            UncertaintySpec::WassersteinBall { p, delta, benchmark } => {
                check(p.is_finite() && *p >= 1.0, "p", *p, "Wasserstein order must be at least 1")?;
                check(
                    delta.is_finite() && *delta >= 0.0,
                    "delta",
                    *delta,
                    "radius must be nonnegative",
                )?;
                check(
                    benchmark.mean().is_finite(),
                    "benchmark",
                    benchmark.mean(),
                    "benchmark must be integrable",
                )
            }
        }
    }
}

/// Worst-case ES over the uncertainty set.
pub fn worst_es(spec: &UncertaintySpec, alpha: f64) -> Result<f64> {
    spec.validate()?;
    check_level("alpha", alpha)?;
    Ok(match spec {
        UncertaintySpec::MomentBall { p, m, v } => {
            if alpha == 0.0 || *v == 0.0 {
                *m
            } else if alpha == 1.0 {
                f64::INFINITY
            } else {
                let b = 1.0 - alpha;
                m + v * alpha * (alpha.powf(*p) * b + b.powf(*p) * alpha).powf(-1.0 / p)
            }
        }
        UncertaintySpec::WassersteinBall { p, delta, benchmark } => {
            let base = dual::es(benchmark, alpha)?;
            if *delta == 0.0 {
                base
            } else if alpha == 1.0 {
                f64::INFINITY
            } else {
                base + delta / (1.0 - alpha).powf(1.0 / p)
            }
        }
    })
}

/// `(1 - a)(m - t) + v ((1 - a)^{1-p} + a^{1-p})^{-1/p}`; the power term
/// vanishes at both endpoints.
pub fn moment_objective(p: f64, m: f64, v: f64, t: f64, alpha: f64) -> f64 {
    if alpha >= 1.0 {
        return 0.0;
    }
    let b = 1.0 - alpha;
    let linear = b * (m - t);
    if alpha <= 0.0 || v == 0.0 {
        return linear;
    }
    // (a b)^{(p-1)/p} / (a^{p-1} + b^{p-1})^{1/p}, free of negative powers
    let power = (alpha * b).powf((p - 1.0) / p) / (alpha.powf(p - 1.0) + b.powf(p - 1.0)).powf(1.0 / p);
    linear + v * power
}

/// `(1 - a)(ES_a - t) + delta (1 - a)^{1 - 1/p}`, zero at `a = 1`.
pub fn wasserstein_objective(benchmark: &LossModel, p: f64, delta: f64, t: f64, alpha: f64) -> f64 {
    if alpha >= 1.0 {
        return 0.0;
    }
    dual::reverse_objective(benchmark, alpha, t) + delta * (1.0 - alpha).powf(1.0 - 1.0 / p)
}

/// Worst-case mean excess `sup E[(Y - t)+]` over the uncertainty set.
///
/// The reported optimizer is the range of evaluated levels whose objective is
/// within the reported tolerance of the maximum; no closed form is claimed.
pub fn worst_mean_excess(spec: &UncertaintySpec, t: f64) -> Result<OptResult<ProbabilityInterval>> {
    spec.validate()?;
    check_finite("t", t)?;
    let search = match spec {
        UncertaintySpec::MomentBall { p, m, v } => numeric::grid_golden_max(
            |a| moment_objective(*p, *m, *v, t, a),
            0.0,
            1.0,
            GRID_NODES,
            LEVEL_TOL,
        ),
        UncertaintySpec::WassersteinBall { p, delta, benchmark } => wasserstein_search(benchmark, *p, *delta, t),
    };
    let value = search.value;
    let slack = REPORTED_TOLERANCE * (1.0 + value.abs());
    let near: Vec<f64> = search
        .trace
        .iter()
        .filter(|(_, v)| *v >= value - slack)
        .map(|(a, _)| *a)
        .collect();
    let lo = near.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = near.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(OptResult {
        value,
        optimizer: ProbabilityInterval::new(lo.clamp(0.0, 1.0), hi.clamp(0.0, 1.0))
            .map_err(|e| Error::Domain(format!("optimizer bracket: {e}")))?,
        trace: search.trace,
        tolerance: REPORTED_TOLERANCE,
    })
}

fn wasserstein_search(benchmark: &LossModel, p: f64, delta: f64, t: f64) -> Search {
    // With p = 1 the radius term is the constant delta on [0, 1) and drops to
    // 0 at a = 1: take the supremum over [0, 1) and compare with 0 explicitly.
    let order_one = p == 1.0;
    let objective = |a: f64| {
        if order_one && a >= 1.0 {
            delta
        } else {
            wasserstein_objective(benchmark, p, delta, t, a)
        }
    };
    let mut search = match benchmark.kind() {
        ModelKind::Empirical(sample) => {
            // concave: piecewise linear part plus a concave power term, so
            // refine inside the two panels adjacent to the best kink
            let n = sample.len();
            let centered = dual::reverse_kinks(sample, t);
            let kink = |k: usize| {
                let a = k as f64 / n as f64;
                if k >= n {
                    objective(1.0)
                } else {
                    centered[k] + delta * (1.0 - a).powf(1.0 - 1.0 / p)
                }
            };
            let mut trace: Vec<(f64, f64)> = (0..=n).map(|k| (k as f64 / n as f64, kink(k))).collect();
            let best = (0..=n)
                .max_by(|&i, &j| trace[i].1.total_cmp(&trace[j].1))
                .unwrap_or(0);
            let mut out = Search {
                arg: trace[best].0,
                value: trace[best].1,
                trace: Vec::new(),
            };
            for (lo, hi) in [(best.saturating_sub(1), best), (best, (best + 1).min(n))] {
                if hi > lo {
                    let a = lo as f64 / n as f64;
                    let b = hi as f64 / n as f64;
                    let s = numeric::golden_max(objective, a, b, LEVEL_TOL);
                    if s.value > out.value {
                        out.arg = s.arg;
                        out.value = s.value;
                    }
                    trace.extend(s.trace);
                }
            }
            out.trace = trace;
            out
        }
        ModelKind::Parametric(_) => numeric::grid_golden_max(objective, 0.0, 1.0, GRID_NODES, LEVEL_TOL),
    };
    if order_one && search.value < 0.0 {
        search.value = 0.0;
        search.arg = 1.0;
    }
    search
}

/// Worst-case mean excess over the `W_2` ball around Pareto(2):
/// `(1 + d/2)^2 / t` for `t > 1 + d/2`, and `2 + d - t` otherwise.
pub fn pareto_worst_mean_excess_closed_form(theta: f64, delta: f64, t: f64) -> Result<f64> {
    check(theta == 2.0, "theta", theta, "closed form is available only for theta = 2 under W2")?;
    check(delta.is_finite() && delta >= 0.0, "delta", delta, "radius must be nonnegative")?;
    check_finite("t", t)?;
    let knee = 1.0 + 0.5 * delta;
    Ok(if t > knee { knee * knee / t } else { 2.0 + delta - t })
}
