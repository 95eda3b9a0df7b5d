use std::path::Path;

use crate::error::{Error, Result};

/// An equally weighted sample of losses, kept sorted ascending.
///
/// The CDF is the right-continuous step function `#{x_i <= t} / n`; no
/// smoothing or interpolation is applied anywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalSample {
    values: Vec<f64>,
    // prefix[k] = x_(1) + ... + x_(k); suffix[k] = x_(k+1) + ... + x_(n)
    prefix: Vec<f64>,
    suffix: Vec<f64>,
}

impl EmpiricalSample {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "loss",
                value: *bad,
                reason: "sample values must be finite",
            });
        }
        values.sort_by(f64::total_cmp);
        let n = values.len();
        let mut prefix = vec![0.0; n + 1];
        for (k, v) in values.iter().enumerate() {
            prefix[k + 1] = prefix[k] + v;
        }
        let mut suffix = vec![0.0; n + 1];
        for k in (0..n).rev() {
            suffix[k] = suffix[k + 1] + values[k];
        }
        Ok(EmpiricalSample {
            values,
            prefix,
            suffix,
        })
    }

    /// Parses a loss file body; see [`parse_losses`].
    pub fn from_text(text: &str) -> Result<Self> {
        Self::new(parse_losses(text)?)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_text(&text)
    }

    /// Sorted values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    fn n(&self) -> f64 {
        self.values.len() as f64
    }

    /// `#{x_i <= t}`.
    pub fn count_le(&self, t: f64) -> usize {
        self.values.partition_point(|&x| x <= t)
    }

    /// `#{x_i < t}`.
    pub fn count_lt(&self, t: f64) -> usize {
        self.values.partition_point(|&x| x < t)
    }

    pub fn cdf(&self, t: f64) -> f64 {
        self.count_le(t) as f64 / self.n()
    }

    pub fn cdf_strict(&self, t: f64) -> f64 {
        self.count_lt(t) as f64 / self.n()
    }

    /// Smallest `k >= 1` with `k / n >= alpha`, using the same floating
    /// division as [`cdf`](Self::cdf) so the two stay mutually consistent.
    pub(crate) fn left_rank(&self, alpha: f64) -> usize {
        let n = self.values.len();
        let nf = self.n();
        let mut k = ((alpha * nf).ceil() as usize).clamp(1, n);
        while k > 1 && (k - 1) as f64 / nf >= alpha {
            k -= 1;
        }
        while k < n && (k as f64 / nf) < alpha {
            k += 1;
        }
        k
    }

    /// Smallest `k` with `k / n > alpha`, or `None` when no atom qualifies.
    fn right_rank(&self, alpha: f64) -> Option<usize> {
        let n = self.values.len();
        let nf = self.n();
        let mut k = ((alpha * nf).floor() as usize).clamp(1, n);
        while k > 1 && (k - 1) as f64 / nf > alpha {
            k -= 1;
        }
        while k <= n && (k as f64 / nf) <= alpha {
            k += 1;
        }
        (k <= n).then_some(k)
    }

    pub fn var_left(&self, alpha: f64) -> f64 {
        if alpha <= 0.0 {
            return f64::NEG_INFINITY;
        }
        self.values[self.left_rank(alpha) - 1]
    }

    pub fn var_right(&self, alpha: f64) -> f64 {
        match self.right_rank(alpha) {
            Some(k) => self.values[k - 1],
            None => f64::INFINITY,
        }
    }

    pub fn mean(&self) -> f64 {
        self.prefix[self.values.len()] / self.n()
    }

    /// `E[(X - t)+]` as a literal finite sum.
    pub fn upper_partial_expectation(&self, t: f64) -> f64 {
        let start = self.count_le(t);
        self.values[start..].iter().map(|x| x - t).sum::<f64>() / self.n()
    }

    /// `int_alpha^1 VaR_beta dbeta`, including the fractional atom at `alpha`.
    pub fn tail_integral(&self, alpha: f64) -> f64 {
        if alpha <= 0.0 {
            return self.mean();
        }
        if alpha >= 1.0 {
            return 0.0;
        }
        let k = self.left_rank(alpha);
        let nf = self.n();
        self.values[k - 1] * (k as f64 / nf - alpha) + self.suffix[k] / nf
    }

    /// `int_0^alpha VaR_beta dbeta`.
    pub fn left_integral(&self, alpha: f64) -> f64 {
        if alpha <= 0.0 {
            return 0.0;
        }
        if alpha >= 1.0 {
            return self.mean();
        }
        let k = self.left_rank(alpha);
        let nf = self.n();
        self.prefix[k - 1] / nf + self.values[k - 1] * (alpha - (k - 1) as f64 / nf)
    }

    /// `int_{k/n}^1 VaR_beta dbeta`, exact at the kink `k / n`.
    pub(crate) fn tail_integral_at_rank(&self, k: usize) -> f64 {
        self.suffix[k] / self.n()
    }

    /// `int_0^{k/n} VaR_beta dbeta`, exact at the kink `k / n`.
    pub(crate) fn left_integral_at_rank(&self, k: usize) -> f64 {
        self.prefix[k] / self.n()
    }

    /// Distinct atoms in ascending order.
    pub fn atoms(&self) -> Vec<f64> {
        let mut out = self.values.clone();
        out.dedup();
        out
    }
}

/// Parses one numeric loss per line. Blank lines are skipped; a single
/// non-numeric first line is treated as a header.
pub fn parse_losses(text: &str) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    let mut seen_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let first = !seen_content;
        seen_content = true;
        match line.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            Ok(_) => {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("non-finite loss `{line}`"),
                })
            }
            Err(_) if first => {}
            Err(_) => {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("expected a number, found `{line}`"),
                })
            }
        }
    }
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo() -> EmpiricalSample {
        EmpiricalSample::new(vec![3.0, 1.0, 4.0, 2.0]).unwrap()
    }

    #[test]
    fn step_cdf_counts_atoms() {
        let s = demo();
        assert_eq!(s.cdf(2.0), 0.5);
        assert_eq!(s.cdf_strict(2.0), 0.25);
        assert_eq!(s.cdf(f64::NEG_INFINITY), 0.0);
        assert_eq!(s.cdf(0.999), 0.0);
        assert_eq!(s.cdf(4.0), 1.0);
    }

    #[test]
    fn quantiles_follow_order_statistics() {
        let s = demo();
        assert_eq!(s.var_left(0.5), 2.0);
        assert_eq!(s.var_right(0.5), 3.0);
        assert_eq!(s.var_left(0.0), f64::NEG_INFINITY);
        assert_eq!(s.var_right(0.0), 1.0);
        assert_eq!(s.var_left(1.0), 4.0);
        assert_eq!(s.var_right(1.0), f64::INFINITY);
        assert_eq!(s.var_left(0.51), 3.0);
        assert_eq!(s.var_right(0.49), 2.0);
    }

    #[test]
    fn rank_rounding_is_consistent_with_cdf() {
        let s = EmpiricalSample::new((0..10).map(f64::from).collect()).unwrap();
        // 0.3 * 10 rounds above 3 in floating point; the left quantile must
        // still be the third order statistic because cdf(2) = 0.3.
        assert_eq!(s.cdf(2.0), 0.3);
        assert_eq!(s.var_left(0.3), 2.0);
        assert_eq!(s.var_right(0.3), 3.0);
    }

    #[test]
    fn integrals_and_moments() {
        let s = demo();
        assert_eq!(s.mean(), 2.5);
        assert_eq!(s.upper_partial_expectation(2.5), 0.5);
        assert_eq!(s.tail_integral(0.5), 1.75);
        assert_eq!(s.left_integral(0.5), 0.75);
        assert!((s.tail_integral(0.6) - (3.0 * 0.15 + 1.0)).abs() < 1e-15);
    }

    #[test]
    fn parsing_handles_header_and_blanks() {
        let v = parse_losses("loss\n1.5\n\n  2\r\n3e2\n").unwrap();
        assert_eq!(v, vec![1.5, 2.0, 300.0]);
        assert_eq!(parse_losses("1\n2").unwrap(), vec![1.0, 2.0]);
        assert!(matches!(parse_losses("a\nb"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_losses("x\n"), Err(Error::EmptySample)));
        assert!(matches!(parse_losses("1\nNaN"), Err(Error::Parse { .. })));
        assert!(matches!(parse_losses(""), Err(Error::EmptySample)));
    }
}
