use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use statrs::function::gamma::{digamma, ln_gamma};

use crate::distributions::{EmpiricalSample, LossModel};
use crate::error::{Error, Result};
use crate::numeric::trigamma;

/// Score tolerance, per observation.
pub const SCORE_TOL: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Lognormal,
    Weibull,
    Gamma,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Lognormal, Family::Weibull, Family::Gamma];

    pub fn name(self) -> &'static str {
        match self {
            Family::Lognormal => "lognormal",
            Family::Weibull => "weibull",
            Family::Gamma => "gamma",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lognormal" => Ok(Family::Lognormal),
            "weibull" => Ok(Family::Weibull),
            "gamma" => Ok(Family::Gamma),
            _ => Err(Error::Spec {
                input: s.to_string(),
                message: "expected lognormal, weibull or gamma".into(),
            }),
        }
    }
}

/// Maximum-likelihood fit. `gradient_norm` is the Euclidean norm of the
/// score divided by the sample size, at the returned parameters.
#[derive(Debug, Clone)]
pub struct FitResult {
    pub family: Family,
    pub model: LossModel,
    pub log_likelihood: f64,
    pub converged: bool,
    pub iterations: usize,
    pub gradient_norm: f64,
}

/// Fits `family` by maximum likelihood.
///
/// Lognormal uses the closed form (log-mean and the `1/n` log-deviation).
/// Gamma runs Newton on `ln k - digamma(k) = ln(mean) - mean(ln x)` from
/// Thom's approximation. Weibull runs Newton on the profile equation for the
/// shape, started from a log-regression on median ranks.
pub fn fit_mle(sample: &EmpiricalSample, family: Family) -> Result<FitResult> {
    let x = sample.values();
    if x.len() < 2 {
        return Err(Error::Domain("maximum likelihood needs at least 2 observations".into()));
    }
    if x[0] <= 0.0 {
        return Err(Error::Domain(format!(
            "{family} fit needs strictly positive data, found {}",
            x[0]
        )));
    }
    if x[0] == x[x.len() - 1] {
        return Err(Error::Domain("constant sample: parameters are not identifiable".into()));
    }
    let n = x.len() as f64;
    let logs: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let mean_log = logs.iter().sum::<f64>() / n;
    match family {
        Family::Lognormal => {
            let var = logs.iter().map(|l| (l - mean_log).powi(2)).sum::<f64>() / n;
            let sigma = var.sqrt();
            if sigma <= 0.0 {
                return Err(Error::Domain("constant log-sample".into()));
            }
            let model = LossModel::lognormal(mean_log, sigma)?;
            let log_likelihood = logs
                .iter()
                .map(|l| -l - sigma.ln() - 0.5 * (2.0 * std::f64::consts::PI).ln() - (l - mean_log).powi(2) / (2.0 * var))
                .sum();
            // score of (mu, sigma), per observation
            let d_mu = logs.iter().map(|l| l - mean_log).sum::<f64>() / (n * var);
            let d_sigma = -1.0 / sigma + logs.iter().map(|l| (l - mean_log).powi(2)).sum::<f64>() / (n * var * sigma);
            Ok(FitResult {
                family,
                model,
                log_likelihood,
                converged: true,
                iterations: 0,
                gradient_norm: d_mu.hypot(d_sigma),
            })
        }
        Family::Gamma => fit_gamma(x, &logs, mean_log),
        Family::Weibull => fit_weibull(x, &logs, mean_log),
    }
}

fn fit_gamma(x: &[f64], logs: &[f64], mean_log: f64) -> Result<FitResult> {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let s = mean.ln() - mean_log;
    if s <= 0.0 {
        return Err(Error::Domain("sample too close to constant for a gamma fit".into()));
    }
    let score = |k: f64| k.ln() - digamma(k) - s;
    let mut k = (3.0 - s + ((s - 3.0).powi(2) + 24.0 * s).sqrt()) / (12.0 * s);
    let mut iterations = 0;
    let mut g = score(k);
    while g.abs() >= SCORE_TOL && iterations < MAX_ITERATIONS {
        let step = g / (1.0 / k - trigamma(k));
        let mut next = k - step;
        while next <= 0.0 {
            next = 0.5 * (k + next.max(0.0));
        }
        k = next;
        g = score(k);
        iterations += 1;
    }
    let rate = k / mean;
    let model = LossModel::gamma(k, rate)?;
    let log_likelihood = x
        .iter()
        .zip(logs)
        .map(|(v, l)| k * rate.ln() - ln_gamma(k) + (k - 1.0) * l - rate * v)
        .sum();
    Ok(FitResult {
        family: Family::Gamma,
        model,
        log_likelihood,
        converged: g.abs() < SCORE_TOL,
        iterations,
        gradient_norm: g.abs(),
    })
}

fn fit_weibull(x: &[f64], logs: &[f64], mean_log: f64) -> Result<FitResult> {
    let n = x.len() as f64;
    let log_max = logs[logs.len() - 1];
    // weighted moments of ln x under weights x^k, scaled by max^k
    let moments = |k: f64| {
        let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
        for &l in logs {
            let w = (k * (l - log_max)).exp();
            s0 += w;
            s1 += w * l;
            s2 += w * l * l;
        }
        (s0, s1 / s0, s2 / s0)
    };
    let profile = |k: f64| {
        let (_, m1, m2) = moments(k);
        (m1 - 1.0 / k - mean_log, m2 - m1 * m1 + 1.0 / (k * k))
    };

    let mut k = weibull_start(logs);
    let mut iterations = 0;
    let (mut h, mut dh) = profile(k);
    while h.abs() >= SCORE_TOL && iterations < MAX_ITERATIONS {
        let mut next = k - h / dh;
        while next <= 0.0 {
            next = 0.5 * (k + next.max(0.0));
        }
        k = next;
        (h, dh) = profile(k);
        iterations += 1;
    }
    let (s0, _, _) = moments(k);
    // scale^k = mean of x^k
    let scale = (log_max + (s0 / n).ln() / k).exp();
    let model = LossModel::weibull(k, scale)?;
    let log_likelihood = x
        .iter()
        .zip(logs)
        .map(|(v, l)| k.ln() - k * scale.ln() + (k - 1.0) * l - (v / scale).powf(k))
        .sum();
    Ok(FitResult {
        family: Family::Weibull,
        model,
        log_likelihood,
        converged: h.abs() < SCORE_TOL,
        iterations,
        gradient_norm: h.abs(),
    })
}

/// Least-squares slope of `ln(-ln(1 - F_i))` on `ln x_(i)` with median ranks
/// `F_i = (i - 0.3) / (n + 0.4)`.
fn weibull_start(logs: &[f64]) -> f64 {
    let n = logs.len() as f64;
    let ys: Vec<f64> = (1..=logs.len())
        .map(|i| {
            let f = (i as f64 - 0.3) / (n + 0.4);
            (-(1.0 - f).ln()).ln()
        })
        .collect();
    let mx = logs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = logs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|x| (x - mx).powi(2)).sum();
    let k = sxy / sxx;
    if k.is_finite() && k > 0.0 {
        k
    } else {
        1.0
    }
}
