use std::fmt::Write;

use serde::Serialize;

use super::{delta0, fit_mle, quartiles, ratio_r, ratio_r_hat, Family, FitResult};
use crate::distributions::{EmpiricalSample, Parametric};
use crate::error::{check, Error, Result};
use crate::format::{json_number, number};

/// `delta / delta0` values of the radius sweep.
pub const DEFAULT_DELTA_MULTIPLIERS: [f64; 6] = [1.0, 1.2, 1.4, 1.6, 1.8, 2.0];
pub const DEFAULT_T_POINTS: usize = 201;

pub const CSV_COLUMNS: [&str; 8] = ["family", "p", "delta", "t", "r", "r_hat", "delta0", "t0"];

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub p: f64,
    pub families: Vec<Family>,
    pub delta_multipliers: Vec<f64>,
    /// Thresholds for the `t` sweep; defaults to an even grid from the data
    /// first to third quartile.
    pub t_grid: Option<Vec<f64>>,
    pub t_points: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            p: 2.0,
            families: Family::ALL.to_vec(),
            delta_multipliers: DEFAULT_DELTA_MULTIPLIERS.to_vec(),
            t_grid: None,
            t_points: DEFAULT_T_POINTS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sweep {
    /// `delta` varies, `t = t0`.
    Delta,
    /// `t` varies, `delta = delta0`.
    T,
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioRow {
    pub sweep: Sweep,
    pub family: Family,
    pub p: f64,
    pub delta: f64,
    pub t: f64,
    #[serde(serialize_with = "json_number")]
    pub r: f64,
    /// `nan` where the empirical mean excess vanishes.
    #[serde(serialize_with = "json_number")]
    pub r_hat: f64,
    #[serde(serialize_with = "json_number")]
    pub delta0: f64,
    pub t0: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub family: Family,
    pub model: Parametric,
    pub log_likelihood: f64,
    pub converged: bool,
    pub iterations: usize,
    pub gradient_norm: f64,
    #[serde(serialize_with = "json_number")]
    pub delta0: f64,
    pub delta0_diagnostic: Option<String>,
    /// Recommended radius range `[delta0, 2 delta0]`.
    pub delta_range: [f64; 2],
    /// First quartile of the fitted benchmark.
    pub t0: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioReport {
    pub label: String,
    pub p: f64,
    pub n: usize,
    /// Data quartiles; the `t` sweep runs from the first to the third.
    pub quartiles: [f64; 3],
    pub t0_convention: &'static str,
    pub t_sweep_convention: &'static str,
    pub families: Vec<FamilyReport>,
    /// Radius sweep rows first, then threshold sweep rows, family by family.
    pub rows: Vec<RatioRow>,
}

const T0_CONVENTION: &str = "first quartile of the fitted benchmark";
const T_SWEEP_CONVENTION: &str = "data quartiles Q1 to Q3";

/// Fits every requested family, computes `delta0` and both ratio sweeps.
pub fn analyze(sample: &EmpiricalSample, label: &str, opts: &AnalyzeOptions) -> Result<RatioReport> {
    check(opts.p.is_finite() && opts.p >= 1.0, "p", opts.p, "Wasserstein order must be at least 1")?;
    if opts.families.is_empty() {
        return Err(Error::Domain("no benchmark families requested".into()));
    }
    for &k in &opts.delta_multipliers {
        check(k.is_finite() && k >= 0.0, "delta multiplier", k, "must be finite and nonnegative")?;
    }
    let (q1, q2, q3) = quartiles(sample)?;
    let t_grid = match &opts.t_grid {
        Some(g) => g.clone(),
        None => even_grid(q1, q3, opts.t_points),
    };

    let mut families = Vec::new();
    let mut rows = Vec::new();
    for &family in &opts.families {
        let fit: FitResult = fit_mle(sample, family)?;
        let d0 = delta0(sample, &fit, opts.p)?;
        let t0 = fit.model.var_left(0.25);
        let row = |sweep, delta: f64, t: f64| -> Result<RatioRow> {
            let r_hat = match ratio_r_hat(&fit.model, sample, delta, t, opts.p) {
                Err(Error::ZeroDenominator(_)) => f64::NAN,
                other => other?,
            };
            Ok(RatioRow {
                sweep,
                family,
                p: opts.p,
                delta,
                t,
                r: ratio_r(&fit.model, delta, t, opts.p)?,
                r_hat,
                delta0: d0.value,
                t0,
            })
        };
        for &k in &opts.delta_multipliers {
            rows.push(row(Sweep::Delta, k * d0.value, t0)?);
        }
        for &t in &t_grid {
            rows.push(row(Sweep::T, d0.value, t)?);
        }
        families.push(FamilyReport {
            family,
            model: *fit.model.as_parametric().expect("fits are parametric"),
            log_likelihood: fit.log_likelihood,
            converged: fit.converged,
            iterations: fit.iterations,
            gradient_norm: fit.gradient_norm,
            delta0: d0.value,
            delta0_diagnostic: d0.diagnostic,
            delta_range: [d0.value, 2.0 * d0.value],
            t0,
        });
    }
    Ok(RatioReport {
        label: label.to_string(),
        p: opts.p,
        n: sample.len(),
        quartiles: [q1, q2, q3],
        t0_convention: T0_CONVENTION,
        t_sweep_convention: T_SWEEP_CONVENTION,
        families,
        rows,
    })
}

/// `points` evenly spaced values from `lo` to `hi` inclusive.
pub fn even_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|i| {
                if i + 1 == points {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (points - 1) as f64
                }
            })
            .collect(),
    }
}

impl RatioReport {
    fn cells(&self, row: &RatioRow, digits: usize) -> [String; 8] {
        [
            row.family.to_string(),
            number(row.p, digits),
            number(row.delta, digits),
            number(row.t, digits),
            number(row.r, digits),
            number(row.r_hat, digits),
            number(row.delta0, digits),
            number(row.t0, digits),
        ]
    }

    /// One header line and one line per row, columns as in [`CSV_COLUMNS`].
    pub fn to_csv(&self, digits: usize) -> String {
        let mut out = CSV_COLUMNS.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&self.cells(row, digits).join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Header block with fit summaries and radius ranges, then the rows.
    pub fn to_table(&self, digits: usize) -> String {
        let g = |x: f64| number(x, digits);
        let mut out = String::new();
        let _ = writeln!(out, "dataset: {}  n={}  p={}", self.label, self.n, g(self.p));
        let _ = writeln!(
            out,
            "data quartiles: Q1={} Q2={} Q3={}",
            g(self.quartiles[0]),
            g(self.quartiles[1]),
            g(self.quartiles[2])
        );
        let _ = writeln!(out, "t0: {}; t sweep: {}", self.t0_convention, self.t_sweep_convention);
        for f in &self.families {
            let params: Vec<String> = f.model.parameters().iter().map(|(k, v)| format!("{k}={}", g(*v))).collect();
            let _ = writeln!(
                out,
                "{}: {} loglik={} converged={} delta0={} delta_range=[{},{}] t0={}",
                f.family,
                params.join(","),
                g(f.log_likelihood),
                f.converged,
                g(f.delta0),
                g(f.delta_range[0]),
                g(f.delta_range[1]),
                g(f.t0),
            );
            if let Some(why) = &f.delta0_diagnostic {
                let _ = writeln!(out, "  note: {why}");
            }
        }
        let cells: Vec<[String; 8]> = self.rows.iter().map(|r| self.cells(r, digits)).collect();
        let mut widths = CSV_COLUMNS.map(str::len);
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let line = |items: &[String]| -> String {
            let padded: Vec<String> = items.iter().zip(widths).map(|(c, w)| format!("{c:>w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        out.push('\n');
        out.push_str(&line(&CSV_COLUMNS.map(String::from)));
        out.push('\n');
        for row in &cells {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }
}
