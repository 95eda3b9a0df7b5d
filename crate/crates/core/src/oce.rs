//! Optimized certainty equivalents
//!
//! ```text
//! R_b(X) = inf_t { t + E[v(X - t)] / b },   0 < b <= v_bar
//! ```
//!
//! the reverse formula `E[v(X - t)] = sup_b { b (R_b(X) - t) }`, and the two
//! quantile-based conjugate pairs `f1(a) = -(1 - a) ES_a`, `f2(a) = a ES-_a`
//! with `f1*(t) = E[X v t]` and `f2*(t) = E[(t - X)+]`.

use std::fmt;
use std::str::FromStr;

use crate::distributions::{EmpiricalSample, LossModel, ModelKind, ProbabilityInterval};
use crate::dual::{level_interval, maximize_level, OptResult, REPORTED_TOLERANCE};
use crate::error::{check, check_finite, check_level, Error, Result};
use crate::numeric;

const BETA_FLOOR: f64 = 1e-8;
const INNER_TOL: f64 = 1e-10;
const BETA_TOL: f64 = 1e-14;
const MAX_DOUBLINGS: usize = 1000;
const MAX_EXPANSIONS: usize = 200;

/// An increasing convex `v` with `v(0) = 0`.
pub trait Kernel: Send + Sync {
    fn value(&self, x: f64) -> f64;
    fn right_derivative(&self, x: f64) -> f64;
    /// `sup_x v'+(x)`, possibly `+inf`.
    fn v_bar(&self) -> f64;

    /// `inf_x v(x)`, the limit of `v` at `-inf`; possibly `-inf`. The default
    /// reads `v` far out in the lower tail.
    fn v_lower(&self) -> f64 {
        self.value(-1e12)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BuiltinKernel {
    /// `x+`
    PositivePart,
    /// `x+ / (1 - alpha)`
    ScaledPositivePart { alpha: f64 },
    /// `e^x - 1`
    Entropic,
}

impl BuiltinKernel {
    pub fn scaled_positive_part(alpha: f64) -> Result<Self> {
        check(
            (0.0..1.0).contains(&alpha),
            "alpha",
            alpha,
            "must lie in [0, 1)",
        )?;
        Ok(BuiltinKernel::ScaledPositivePart { alpha })
    }
}

impl Kernel for BuiltinKernel {
    fn value(&self, x: f64) -> f64 {
        match *self {
            BuiltinKernel::PositivePart => x.max(0.0),
            BuiltinKernel::ScaledPositivePart { alpha } => x.max(0.0) / (1.0 - alpha),
            BuiltinKernel::Entropic => x.exp_m1(),
        }
    }

    fn right_derivative(&self, x: f64) -> f64 {
        match *self {
            BuiltinKernel::PositivePart | BuiltinKernel::ScaledPositivePart { .. } => {
                if x >= 0.0 {
                    self.v_bar()
                } else {
                    0.0
                }
            }
            BuiltinKernel::Entropic => x.exp(),
        }
    }

    fn v_bar(&self) -> f64 {
        match *self {
            BuiltinKernel::PositivePart => 1.0,
            BuiltinKernel::ScaledPositivePart { alpha } => 1.0 / (1.0 - alpha),
            BuiltinKernel::Entropic => f64::INFINITY,
        }
    }

    fn v_lower(&self) -> f64 {
        match *self {
            BuiltinKernel::PositivePart | BuiltinKernel::ScaledPositivePart { .. } => 0.0,
            BuiltinKernel::Entropic => -1.0,
        }
    }
}

impl FromStr for BuiltinKernel {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let err = |message: &str| Error::Spec {
            input: input.to_string(),
            message: message.to_string(),
        };
        let (name, body) = input.trim().split_once(':').unwrap_or((input.trim(), ""));
        match name {
            "positive-part" | "entropic" if !body.trim().is_empty() => Err(err("kernel takes no parameters")),
            "positive-part" => Ok(BuiltinKernel::PositivePart),
            "entropic" => Ok(BuiltinKernel::Entropic),
            "scaled-positive-part" => {
                let (k, v) = body.split_once('=').ok_or_else(|| err("expected alpha=VALUE"))?;
                if k.trim() != "alpha" {
                    return Err(err("expected alpha=VALUE"));
                }
                let alpha: f64 = v.trim().parse().map_err(|_| err("alpha is not a number"))?;
                BuiltinKernel::scaled_positive_part(alpha)
            }
            _ => Err(err("unknown kernel; expected positive-part, scaled-positive-part:alpha=A or entropic")),
        }
    }
}

impl fmt::Display for BuiltinKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinKernel::PositivePart => f.write_str("positive-part"),
            BuiltinKernel::ScaledPositivePart { alpha } => write!(f, "scaled-positive-part:alpha={alpha}"),
            BuiltinKernel::Entropic => f.write_str("entropic"),
        }
    }
}

type ScalarFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// A user-supplied kernel, validated on construction.
pub struct CustomKernel {
    value: ScalarFn,
    derivative: ScalarFn,
    v_bar: f64,
}

impl CustomKernel {
    pub fn new<V, D>(value: V, right_derivative: D, v_bar: f64) -> Result<Self>
    where
        V: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let k = CustomKernel {
            value: Box::new(value),
            derivative: Box::new(right_derivative),
            v_bar,
        };
        validate_kernel(&k)?;
        Ok(k)
    }
}

impl Kernel for CustomKernel {
    fn value(&self, x: f64) -> f64 {
        (self.value)(x)
    }

    fn right_derivative(&self, x: f64) -> f64 {
        (self.derivative)(x)
    }

    fn v_bar(&self) -> f64 {
        self.v_bar
    }
}

impl fmt::Debug for CustomKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomKernel").field("v_bar", &self.v_bar).finish_non_exhaustive()
    }
}

/// Spot-checks the kernel axioms on a grid over [-50, 50].
pub fn validate_kernel(k: &dyn Kernel) -> Result<()> {
    let bad = |what: &str| Err(Error::Domain(format!("kernel rejected: {what}")));
    let v_bar = k.v_bar();
    if v_bar.is_nan() || v_bar < 1.0 {
        return bad("v_bar must be at least 1");
    }
    if k.value(0.0).abs() > 1e-12 {
        return bad("v(0) must be 0");
    }
    let grid: Vec<f64> = (0..=400).map(|i| -50.0 + 0.25 * i as f64).collect();
    let vals: Vec<f64> = grid.iter().map(|&x| k.value(x)).collect();
    let ders: Vec<f64> = grid.iter().map(|&x| k.right_derivative(x)).collect();
    if vals.iter().chain(&ders).any(|x| !x.is_finite()) {
        return bad("non-finite value on the check grid");
    }
    let slack = |a: f64, b: f64| 1e-9 * (1.0 + a.abs().max(b.abs()));
    for i in 1..grid.len() {
        if vals[i] + slack(vals[i], vals[i - 1]) < vals[i - 1] {
            return bad("v must be nondecreasing");
        }
        if ders[i] + slack(ders[i], ders[i - 1]) < ders[i - 1] {
            return bad("right derivative must be nondecreasing");
        }
        if ders[i] < -1e-12 || ders[i] > v_bar * (1.0 + 1e-9) {
            return bad("right derivative must lie in [0, v_bar]");
        }
    }
    for i in 1..grid.len() - 1 {
        let mid = vals[i];
        let chord = 0.5 * (vals[i - 1] + vals[i + 1]);
        if mid > chord + slack(mid, chord) {
            return bad("v must be convex");
        }
    }
    if k.right_derivative(-50.0) > 1e-6 {
        return bad("right derivative must vanish at -inf");
    }
    Ok(())
}

/// An essentially bounded loss: an empirical sample, or a model clamped
/// between two of its quantiles.
#[derive(Debug, Clone)]
pub enum BoundedModel {
    Empirical(EmpiricalSample),
    Clamped {
        base: LossModel,
        lo_level: f64,
        hi_level: f64,
    },
}

impl BoundedModel {
    /// Admits empirical models. Parametric families are unbounded and need
    /// [`clamped`](Self::clamped).
    pub fn new(model: &LossModel) -> Result<Self> {
        match model.kind() {
            ModelKind::Empirical(s) => Ok(BoundedModel::Empirical(s.clone())),
            ModelKind::Parametric(_) => Err(Error::Domain(format!(
                "{model} is not essentially bounded; clamp it between two quantile levels first"
            ))),
        }
    }

    /// `X` clamped to `[VaR_lo, VaR_hi]`.
    pub fn clamped(base: LossModel, lo_level: f64, hi_level: f64) -> Result<Self> {
        check(
            lo_level > 0.0 && lo_level < hi_level && hi_level < 1.0,
            "lo_level",
            lo_level,
            "clamp levels need 0 < lo < hi < 1",
        )?;
        Ok(BoundedModel::Clamped {
            base,
            lo_level,
            hi_level,
        })
    }

    pub fn ess_inf(&self) -> f64 {
        match self {
            BoundedModel::Empirical(s) => s.min(),
            BoundedModel::Clamped { base, lo_level, .. } => base.var_left(*lo_level),
        }
    }

    pub fn ess_sup(&self) -> f64 {
        match self {
            BoundedModel::Empirical(s) => s.max(),
            BoundedModel::Clamped { base, hi_level, .. } => base.var_left(*hi_level),
        }
    }

    /// `E[f(X)]`.
    pub fn expect<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.expect_kinked(f, None)
    }

    /// `E[f(X)]` where `f` may have a kink at `kink`.
    fn expect_kinked<F: Fn(f64) -> f64>(&self, f: F, kink: Option<f64>) -> f64 {
        match self {
            BoundedModel::Empirical(s) => s.values().iter().map(|&x| f(x)).sum::<f64>() / s.len() as f64,
            BoundedModel::Clamped {
                base,
                lo_level,
                hi_level,
            } => {
                let (a, b) = (*lo_level, *hi_level);
                let mut breaks: Vec<f64> = (0..=32).map(|i| a + (b - a) * i as f64 / 32.0).collect();
                if let Some(t) = kink {
                    let u = base.cdf(t);
                    if u > a && u < b {
                        breaks.push(u);
                        breaks.sort_by(f64::total_cmp);
                    }
                }
                let body = numeric::integrate_panels(|u| f(base.var_left(u)), &breaks, 1e-13);
                a * f(base.var_left(a)) + body + (1.0 - b) * f(base.var_left(b))
            }
        }
    }
}

fn check_beta(kernel: &dyn Kernel, beta: f64) -> Result<()> {
    check(
        beta > 0.0 && beta.is_finite() && beta <= kernel.v_bar(),
        "beta",
        beta,
        "must lie in (0, v_bar] and be finite",
    )
}

/// `R_beta(X)` with its minimizing threshold.
pub fn oce(model: &BoundedModel, kernel: &dyn Kernel, beta: f64) -> Result<OptResult<f64>> {
    check_beta(kernel, beta)?;
    Ok(oce_unchecked(model, kernel, beta))
}

fn oce_unchecked(model: &BoundedModel, kernel: &dyn Kernel, beta: f64) -> OptResult<f64> {
    let objective = |s: f64| s + model.expect_kinked(|x| kernel.value(x - s), Some(s)) / beta;
    let (mut lo, mut hi) = (model.ess_inf() - 1.0, model.ess_sup() + 1.0);
    let mut trace = Vec::new();
    let mut best;
    let mut expansions = 0;
    // the minimizer can leave the essential range, e.g. entropic with small beta
    loop {
        let tol = INNER_TOL * (1.0 + lo.abs().max(hi.abs()));
        let s = numeric::golden_min(objective, lo, hi, tol);
        trace.extend_from_slice(&s.trace);
        best = (s.arg, s.value);
        let width = hi - lo;
        expansions += 1;
        if expansions > MAX_EXPANSIONS {
            break;
        }
        if s.arg - lo <= 2.0 * tol {
            lo -= width;
        } else if hi - s.arg <= 2.0 * tol {
            hi += width;
        } else {
            break;
        }
    }
    if let BoundedModel::Empirical(sample) = model {
        // piecewise-linear kernels are minimized at an atom
        let v = sample.values();
        let i = v.partition_point(|&x| x < best.0);
        for j in [i.wrapping_sub(1), i] {
            if let Some(&x) = v.get(j) {
                let val = objective(x);
                trace.push((x, val));
                if val < best.1 {
                    best = (x, val);
                }
            }
        }
    }
    OptResult {
        value: best.1,
        optimizer: best.0,
        trace,
        tolerance: REPORTED_TOLERANCE,
    }
}

/// `E[v(X - t)]` computed directly.
pub fn expected_kernel_direct(model: &BoundedModel, kernel: &dyn Kernel, t: f64) -> Result<f64> {
    check_finite("t", t)?;
    Ok(model.expect_kinked(|x| kernel.value(x - t), Some(t)))
}

/// `E[v(X - t)]` as `sup_b b (R_b(X) - t)`. The optimizer is the best `b`
/// found; the supremum need not be attained. As `b -> 0` the objective tends
/// to `inf v`, which is kept as a candidate and reported with `b = 0`.
pub fn expected_kernel_via_reverse(model: &BoundedModel, kernel: &dyn Kernel, t: f64) -> Result<OptResult<f64>> {
    check_finite("t", t)?;
    let objective = |b: f64| b * (oce_unchecked(model, kernel, b).value - t);
    let v_bar = kernel.v_bar();
    let (lo, hi) = if v_bar.is_finite() {
        (BETA_FLOOR, v_bar)
    } else {
        let (mut prev, mut b) = (BETA_FLOOR, 1.0);
        let mut fb = objective(b);
        let mut doublings = 0;
        loop {
            let f2 = objective(2.0 * b);
            if f2 < fb {
                break (prev, 2.0 * b);
            }
            doublings += 1;
            if doublings > MAX_DOUBLINGS || !f2.is_finite() {
                return Err(Error::Domain("beta bracket expansion did not terminate".into()));
            }
            prev = b;
            b *= 2.0;
            fb = f2;
        }
    };
    // the objective has kinks in beta for piecewise-linear kernels; locate
    // them to near float resolution
    let mut s = numeric::golden_max(objective, lo, hi, BETA_TOL * (1.0 + hi));
    let limit = kernel.v_lower();
    if limit > s.value {
        s.value = limit;
        s.arg = 0.0;
    }
    Ok(OptResult {
        value: s.value,
        optimizer: s.arg,
        trace: s.trace,
        tolerance: REPORTED_TOLERANCE,
    })
}

/// `f1(alpha) = -(1 - alpha) ES_alpha`.
pub fn f1(model: &LossModel, alpha: f64) -> Result<f64> {
    check_level("alpha", alpha)?;
    Ok(if alpha >= 1.0 { 0.0 } else { -model.tail_integral(alpha) })
}

/// `f2(alpha) = alpha ES-_alpha`.
pub fn f2(model: &LossModel, alpha: f64) -> Result<f64> {
    check_level("alpha", alpha)?;
    Ok(model.left_integral(alpha))
}

/// `f1*(t) = max_a { a t - f1(a) } = E[X v t]`.
pub fn conjugate_f1(model: &LossModel, t: f64) -> Result<OptResult<ProbabilityInterval>> {
    check_finite("t", t)?;
    let s = maximize_level(
        model,
        |a| a * t + if a >= 1.0 { 0.0 } else { model.tail_integral(a) },
        |k| {
            let sample = model.as_empirical().expect("kink scan on empirical model");
            (k as f64 / sample.len() as f64) * t + sample.tail_integral_at_rank(k)
        },
    );
    Ok(OptResult {
        value: s.value,
        optimizer: level_interval(model, t),
        trace: s.trace,
        tolerance: REPORTED_TOLERANCE,
    })
}

/// `f2*(t) = max_a { a t - f2(a) } = E[(t - X)+]`.
pub fn conjugate_f2(model: &LossModel, t: f64) -> Result<OptResult<ProbabilityInterval>> {
    check_finite("t", t)?;
    let s = maximize_level(
        model,
        |a| a * t - model.left_integral(a),
        |k| {
            let sample = model.as_empirical().expect("kink scan on empirical model");
            (k as f64 / sample.len() as f64) * t - sample.left_integral_at_rank(k)
        },
    );
    Ok(OptResult {
        value: s.value,
        optimizer: level_interval(model, t),
        trace: s.trace,
        tolerance: REPORTED_TOLERANCE,
    })
}

/// Discrete Legendre transform `f*(s) = max_i { s x_i - f_i }` of sampled
/// points, evaluated at each slope.
pub fn legendre_transform(points: &[(f64, f64)], slopes: &[f64]) -> Vec<f64> {
    slopes
        .iter()
        .map(|&s| {
            points
                .iter()
                .map(|&(x, fx)| s * x - fx)
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo() -> LossModel {
        LossModel::empirical(vec![1.0, 2.0, 3.0, 4.0]).unwrap()
    }

    fn bounded(v: Vec<f64>) -> BoundedModel {
        BoundedModel::new(&LossModel::empirical(v).unwrap()).unwrap()
    }

    #[test]
    fn kernel_tokens() {
        let k: BuiltinKernel = "scaled-positive-part:alpha=0.9".parse().unwrap();
        assert_eq!(k, BuiltinKernel::ScaledPositivePart { alpha: 0.9 });
        assert!((k.v_bar() - 10.0).abs() < 1e-12);
        assert_eq!(k.to_string().parse::<BuiltinKernel>().unwrap(), k);
        assert_eq!("entropic".parse::<BuiltinKernel>().unwrap(), BuiltinKernel::Entropic);
        for bad in ["", "positive", "scaled-positive-part", "scaled-positive-part:alpha=1", "entropic:x=1"] {
            assert!(bad.parse::<BuiltinKernel>().is_err(), "{bad}");
        }
    }

    #[test]
    fn builtin_kernels_validate() {
        for k in [
            BuiltinKernel::PositivePart,
            BuiltinKernel::ScaledPositivePart { alpha: 0.5 },
            BuiltinKernel::Entropic,
        ] {
            validate_kernel(&k).unwrap();
        }
    }

    #[test]
    fn custom_kernels_are_checked() {
        assert!(CustomKernel::new(|x: f64| x, |_| 1.0, 1.0).is_err());
        assert!(CustomKernel::new(|x: f64| x.max(0.0).powi(2), |x: f64| 2.0 * x.max(0.0), 1.0).is_err());
        assert!(CustomKernel::new(|x: f64| -x.min(0.0), |x| if x < 0.0 { -1.0 } else { 0.0 }, 1.0).is_err());
        assert!(CustomKernel::new(|x: f64| 2.0 * x.max(0.0), |x| if x >= 0.0 { 2.0 } else { 0.0 }, 2.0).is_ok());
        assert!(CustomKernel::new(|x: f64| 0.5 * x.max(0.0), |x| if x >= 0.0 { 0.5 } else { 0.0 }, 0.5).is_err());
    }

    #[test]
    fn positive_part_oce_is_es() {
        let m = bounded(vec![1.0, 2.0, 3.0, 4.0]);
        let r = oce(&m, &BuiltinKernel::PositivePart, 0.5).unwrap();
        assert_eq!(r.value, 3.5);
        assert!(oce(&m, &BuiltinKernel::PositivePart, 1.5).is_err());
        assert!(oce(&m, &BuiltinKernel::PositivePart, 0.0).is_err());
        assert!(oce(&m, &BuiltinKernel::Entropic, f64::INFINITY).is_err());
    }

    #[test]
    fn entropic_oce() {
        let m = bounded(vec![0.0, 1.0]);
        let r = oce(&m, &BuiltinKernel::Entropic, 1.0).unwrap();
        let exact = ((1.0 + std::f64::consts::E) / 2.0).ln();
        assert!((r.value - exact).abs() < 1e-12);
        // far outside the support
        let r = oce(&m, &BuiltinKernel::Entropic, 1e-6).unwrap();
        let mgf = (1.0 + std::f64::consts::E) / 2.0;
        assert!((r.optimizer - (mgf / 1e-6).ln()).abs() < 1e-4);
    }

    #[test]
    fn constant_sample() {
        let m = bounded(vec![3.0]);
        for (k, b) in [(BuiltinKernel::PositivePart, 0.7), (BuiltinKernel::Entropic, 1.0)] {
            assert!((oce(&m, &k, b).unwrap().value - 3.0).abs() < 1e-9);
            assert!(expected_kernel_via_reverse(&m, &k, 3.0).unwrap().value.abs() < 1e-9);
        }
        // away from b = v'(0) only cash additivity survives
        let b: f64 = 0.7;
        let r = oce(&m, &BuiltinKernel::Entropic, b).unwrap().value;
        assert!((r - (3.0 - b.ln() + 1.0 - 1.0 / b)).abs() < 1e-9);
    }

    #[test]
    fn reverse_matches_direct() {
        let m = bounded(vec![1.0, 2.0, 3.0, 4.0]);
        let r = expected_kernel_via_reverse(&m, &BuiltinKernel::PositivePart, 2.5).unwrap();
        assert!((r.value - 0.5).abs() < 1e-9);
        let m = bounded(vec![0.0, 1.0]);
        let r = expected_kernel_via_reverse(&m, &BuiltinKernel::Entropic, 0.0).unwrap();
        let e = std::f64::consts::E;
        assert!((r.value - (e - 1.0) / 2.0).abs() < 1e-9);
        assert!((r.optimizer - (1.0 + e) / 2.0).abs() < 1e-3);
    }

    #[test]
    fn clamped_models() {
        let base = LossModel::normal(0.0, 1.0).unwrap();
        assert!(BoundedModel::new(&base).is_err());
        let m = BoundedModel::clamped(base.clone(), 0.01, 0.99).unwrap();
        assert!(m.expect(|x| x).abs() < 1e-12);
        let k = BuiltinKernel::ScaledPositivePart { alpha: 0.9 };
        let r = oce(&m, &k, 1.0).unwrap();
        // ES_0.9 of the clamp equals the average of min(Q, Q(0.99)) over [0.9, 1]
        let q99 = base.var_left(0.99);
        let exact = (base.tail_integral(0.9) - base.tail_integral(0.99) + 0.01 * q99) / 0.1;
        assert!((r.value - exact).abs() < 1e-8, "{} {}", r.value, exact);
        let d = expected_kernel_direct(&m, &BuiltinKernel::Entropic, 0.5).unwrap();
        let v = expected_kernel_via_reverse(&m, &BuiltinKernel::Entropic, 0.5).unwrap();
        assert!((d - v.value).abs() < 1e-7 * (1.0 + d.abs()));
        assert!(BoundedModel::clamped(base, 0.5, 0.5).is_err());
    }

    #[test]
    fn conjugate_examples() {
        let m = demo();
        let r = conjugate_f1(&m, 2.5).unwrap();
        assert_eq!(r.value, 3.0);
        assert_eq!(r.optimizer, ProbabilityInterval { lo: 0.5, hi: 0.5 });
        assert_eq!(conjugate_f1(&m, 0.0).unwrap().value, 2.5);
        assert_eq!(conjugate_f1(&m, 9.0).unwrap().value, 9.0);
        let r = conjugate_f2(&m, 2.5).unwrap();
        assert_eq!(r.value, 0.5);
        assert_eq!(r.optimizer, ProbabilityInterval { lo: 0.5, hi: 0.5 });
        assert_eq!(conjugate_f2(&m, 0.5).unwrap().value, 0.0);
        let c = LossModel::empirical(vec![2.0]).unwrap();
        assert_eq!(conjugate_f2(&c, 5.0).unwrap().value, 3.0);
        assert_eq!(conjugate_f2(&c, 1.0).unwrap().value, 0.0);
    }

    #[test]
    fn conjugates_on_pareto() {
        let p = LossModel::pareto(2.0).unwrap();
        let r = conjugate_f1(&p, 2.0).unwrap();
        assert!((r.value - 2.5).abs() < 1e-9);
        let r = conjugate_f2(&p, 2.0).unwrap();
        assert!((r.value - 0.5).abs() < 1e-9);
    }

    #[test]
    fn legendre_of_line() {
        let pts: Vec<(f64, f64)> = (0..=10).map(|i| (i as f64 / 10.0, 2.0 * i as f64 / 10.0)).collect();
        let t = legendre_transform(&pts, &[0.0, 2.0, 3.0]);
        assert_eq!(t, vec![0.0, 0.0, 1.0]);
    }
}
