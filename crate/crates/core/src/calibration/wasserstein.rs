use serde::Serialize;

use crate::distributions::{EmpiricalSample, LossModel, ModelKind};
use crate::error::{check, Result};
use crate::numeric;

/// Innermost level kept in the quadrature; the remaining tail mass is
/// extrapolated from the last two decades. Log-type quantile tails (lognormal)
/// have decade ratios that settle slowly, so the cut sits near float resolution.
const TAIL_LEVEL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distance {
    pub value: f64,
    /// Set when the distance is infinite or otherwise qualified.
    pub diagnostic: Option<String>,
}

impl Distance {
    fn finite(value: f64) -> Self {
        Distance {
            value,
            diagnostic: None,
        }
    }

    fn divergent(why: String) -> Self {
        Distance {
            value: f64::INFINITY,
            diagnostic: Some(why),
        }
    }
}

/// `W_p(a, b) = (int_0^1 |F^-1(u) - G^-1(u)|^p du)^(1/p)`.
pub fn wasserstein_distance(a: &LossModel, b: &LossModel, p: f64) -> Result<Distance> {
    check(p.is_finite() && p >= 1.0, "p", p, "Wasserstein order must be at least 1")?;
    if a == b {
        return Ok(Distance::finite(0.0));
    }
    match (a.has_finite_moment(p), b.has_finite_moment(p)) {
        (true, false) => return Ok(Distance::divergent(format!("{b} has no finite moment of order {p}"))),
        (false, true) => return Ok(Distance::divergent(format!("{a} has no finite moment of order {p}"))),
        _ => {}
    }
    match (a.kind(), b.kind()) {
        (ModelKind::Empirical(x), ModelKind::Empirical(y)) => Ok(Distance::finite(empirical_pair(x, y, p))),
        (ModelKind::Empirical(x), ModelKind::Parametric(_)) => Ok(against_model(x, b, p)),
        (ModelKind::Parametric(_), ModelKind::Empirical(y)) => Ok(against_model(y, a, p)),
        (ModelKind::Parametric(_), ModelKind::Parametric(_)) => Ok(between_models(a, b, p)),
    }
}

fn empirical_pair(x: &EmpiricalSample, y: &EmpiricalSample, p: f64) -> f64 {
    let (xv, yv) = (x.values(), y.values());
    if xv.len() == yv.len() {
        let s: f64 = xv.iter().zip(yv).map(|(a, b)| (a - b).abs().powf(p)).sum();
        return (s / xv.len() as f64).powf(1.0 / p);
    }
    // both quantile functions are constant between consecutive jump levels
    let mut levels: Vec<f64> = (0..=xv.len())
        .map(|i| i as f64 / xv.len() as f64)
        .chain((0..=yv.len()).map(|j| j as f64 / yv.len() as f64))
        .collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let s: f64 = levels
        .windows(2)
        .map(|w| {
            let mid = 0.5 * (w[0] + w[1]);
            (w[1] - w[0]) * (x.var_left(mid) - y.var_left(mid)).abs().powf(p)
        })
        .sum();
    s.powf(1.0 / p)
}

/// Decades `edge * 10^-j` reaching below `TAIL_LEVEL`, innermost first.
fn decades(edge: f64) -> Vec<f64> {
    let mut out = vec![edge];
    let mut d = edge;
    while d > TAIL_LEVEL {
        d *= 0.1;
        out.push(d);
    }
    out
}

/// Geometric extrapolation of the tail beyond the outermost decade from the
/// contributions of the last two decades. `None` signals divergence.
fn tail_remainder(outer: f64, inner: f64) -> Option<f64> {
    if outer == 0.0 {
        return Some(0.0);
    }
    if !outer.is_finite() || inner <= 0.0 {
        return None;
    }
    let ratio = outer / inner;
    if ratio >= 1.0 {
        None
    } else {
        Some(outer * ratio / (1.0 - ratio))
    }
}

/// Panel integration against a parametric quantile: the empirical quantile
/// is constant on each `((i-1)/n, i/n]`, each panel is split where the model
/// quantile crosses that constant, and pieces use 64-point Gauss-Legendre.
fn against_model(sample: &EmpiricalSample, model: &LossModel, p: f64) -> Distance {
    let n = sample.len();
    let edge = (1.0 / n as f64).min(0.5);
    let low = decades(edge);
    let mut breaks: Vec<f64> = low.iter().rev().copied().collect();
    breaks.extend((1..n).map(|i| i as f64 / n as f64));
    breaks.extend(low.iter().map(|d| 1.0 - d));
    breaks.dedup();

    let piece = |lo: f64, hi: f64| -> f64 {
        let c = sample.var_left(0.5 * (lo + hi));
        let f = |u: f64| (model.var_left(u) - c).abs().powf(p);
        let cross = model.cdf(c);
        if cross > lo && cross < hi {
            numeric::gl64_panel(f, lo, cross) + numeric::gl64_panel(f, cross, hi)
        } else {
            numeric::gl64_panel(f, lo, hi)
        }
    };
    let pieces: Vec<f64> = breaks.windows(2).map(|w| piece(w[0], w[1])).collect();
    finish(&pieces, p, &format!("W_{p} between the sample and {model}"))
}

fn between_models(a: &LossModel, b: &LossModel, p: f64) -> Distance {
    let low = decades(0.5);
    let mut breaks: Vec<f64> = low.iter().rev().copied().collect();
    breaks.extend(low.iter().skip(1).map(|d| 1.0 - d));
    let f = |u: f64| (a.var_left(u) - b.var_left(u)).abs().powf(p);
    let pieces = numeric::integrate_pieces(f, &breaks, 1e-12);
    finish(&pieces, p, &format!("W_{p} between {a} and {b}"))
}

/// Sums panel contributions, adding extrapolated tails at both ends.
fn finish(pieces: &[f64], p: f64, what: &str) -> Distance {
    let k = pieces.len();
    let bottom = tail_remainder(pieces[0], pieces[1]);
    let top = tail_remainder(pieces[k - 1], pieces[k - 2]);
    match (bottom, top) {
        (Some(lo), Some(hi)) => {
            let total: f64 = pieces.iter().sum::<f64>() + lo + hi;
            if total.is_finite() {
                Distance::finite(total.max(0.0).powf(1.0 / p))
            } else {
                Distance::divergent(format!("{what}: quadrature overflowed"))
            }
        }
        _ => Distance::divergent(format!("{what}: quantile tail is not p-integrable")),
    }
}
