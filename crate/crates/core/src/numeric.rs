//! Scalar numerics shared by the optimization and calibration modules:
//! golden-section search, Gauss–Legendre quadrature, bisection and a few
//! special functions that `statrs` does not provide.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::sync::OnceLock;

use statrs::function::erf;

/// Inverse golden ratio, (sqrt(5) - 1) / 2.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Outcome of a one-dimensional search, with every evaluation recorded.
#[derive(Debug, Clone)]
pub struct Search {
    pub arg: f64,
    pub value: f64,
    pub trace: Vec<(f64, f64)>,
}

impl Search {
    fn new() -> Self {
        Search {
            arg: f64::NAN,
            value: f64::NEG_INFINITY,
            trace: Vec::new(),
        }
    }

    fn eval<F: FnMut(f64) -> f64>(&mut self, f: &mut F, x: f64) -> f64 {
        let fx = f(x);
        self.trace.push((x, fx));
        if fx > self.value || self.arg.is_nan() {
            self.arg = x;
            self.value = fx;
        }
        fx
    }

    fn merge(&mut self, other: Search) {
        if other.value > self.value || self.arg.is_nan() {
            self.arg = other.arg;
            self.value = other.value;
        }
        self.trace.extend(other.trace);
    }
}

/// Golden-section maximization of a unimodal function on `[lo, hi]`.
///
/// Both endpoints are evaluated, so a maximum sitting on the boundary is
/// found exactly. The search stops once the bracket is narrower than `tol`.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> Search {
    let mut s = Search::new();
    golden_into(&mut s, &mut f, lo, hi, tol);
    s
}

fn golden_into<F: FnMut(f64) -> f64>(s: &mut Search, f: &mut F, lo: f64, hi: f64, tol: f64) {
    let (mut a, mut b) = (lo, hi);
    s.eval(f, a);
    if b <= a {
        return;
    }
    s.eval(f, b);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = s.eval(f, c);
    let mut fd = s.eval(f, d);
    for _ in 0..300 {
        if b - a <= tol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            if !(c > a && c < d) {
                break;
            }
            fc = s.eval(f, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            if !(d > c && d < b) {
                break;
            }
            fd = s.eval(f, d);
        }
    }
}

/// Golden-section minimization; the returned `value` is the minimum.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> Search {
    let mut s = golden_max(|x| -f(x), lo, hi, tol);
    s.value = -s.value;
    for p in &mut s.trace {
        p.1 = -p.1;
    }
    s
}

/// Coarse grid scan followed by golden-section refinement around the best
/// grid node. Used for concave objectives whose maximizer may sit in a very
/// narrow region near an endpoint.
pub fn grid_golden_max<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    nodes: usize,
    tol: f64,
) -> Search {
    let nodes = nodes.max(2);
    let mut s = Search::new();
    let h = (hi - lo) / nodes as f64;
    let mut best = 0;
    let mut best_val = f64::NEG_INFINITY;
    for i in 0..=nodes {
        let x = if i == nodes { hi } else { lo + h * i as f64 };
        let fx = s.eval(&mut f, x);
        if fx > best_val {
            best_val = fx;
            best = i;
        }
    }
    let a = lo + h * best.saturating_sub(1) as f64;
    let b = if best + 1 >= nodes {
        hi
    } else {
        lo + h * (best + 1) as f64
    };
    let mut refine = Search::new();
    golden_into(&mut refine, &mut f, a, b, tol);
    s.merge(refine);
    s
}

/// Smallest `x` in `[lo, hi]` with `pred(x)` true, for a monotone predicate
/// with `pred(hi)` true. Stops once the bracket is narrower than `tol`
/// (relative below magnitude 1) or at float resolution.
pub fn bisect<P: FnMut(f64) -> bool>(mut pred: P, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    for _ in 0..2000 {
        if hi - lo <= tol * hi.abs().clamp(f64::MIN_POSITIVE, 1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Gauss–Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order;
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let z1 = z;
            z = z1 - p1 / dp;
            if (z - z1).abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(16))
}

fn gl64() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(64))
}

fn apply_rule<F: FnMut(f64) -> f64>(rule: &(Vec<f64>, Vec<f64>), f: &mut F, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    rule.0
        .iter()
        .zip(&rule.1)
        .map(|(&x, &w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Fixed 64-point Gauss–Legendre rule on `[a, b]`.
pub fn gl64_panel<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    apply_rule(gl64(), &mut f, a, b)
}

/// Cap on panel bisections in one [`integrate_pieces`] call.
const MAX_SPLITS: usize = 4000;

/// Adaptive Gauss–Legendre integration of a smooth function over the given
/// panel breakpoints, to `rel_tol` of the total.
pub fn integrate_panels<F: FnMut(f64) -> f64>(f: F, breaks: &[f64], rel_tol: f64) -> f64 {
    integrate_pieces(f, breaks, rel_tol).iter().sum()
}

struct Cell {
    err: f64,
    a: f64,
    b: f64,
    value: f64,
    piece: usize,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err).is_eq()
    }
}

impl Eq for Cell {}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Per-panel values of [`integrate_panels`]. Globally adaptive: the cell with
/// the largest error estimate (16-point rule against its two halves) is
/// bisected until the summed estimate drops below `rel_tol` of the total,
/// cells reach float resolution, or the split budget runs out.
pub fn integrate_pieces<F: FnMut(f64) -> f64>(mut f: F, breaks: &[f64], rel_tol: f64) -> Vec<f64> {
    let rule = gl16();
    let split = |f: &mut F, a: f64, b: f64, whole: f64, piece: usize| -> [Cell; 2] {
        let m = 0.5 * (a + b);
        let (l, r) = (apply_rule(rule, f, a, m), apply_rule(rule, f, m, b));
        let err = 0.5 * (l + r - whole).abs();
        let err = if err.is_nan() { f64::INFINITY } else { err };
        [
            Cell { err, a, b: m, value: l, piece },
            Cell { err, a: m, b, value: r, piece },
        ]
    };
    let mut heap = std::collections::BinaryHeap::new();
    for (i, w) in breaks.windows(2).enumerate() {
        if w[1] > w[0] {
            let whole = apply_rule(rule, &mut f, w[0], w[1]);
            heap.extend(split(&mut f, w[0], w[1], whole, i));
        }
    }
    for _ in 0..MAX_SPLITS {
        let total: f64 = heap.iter().map(|c| c.value).sum();
        let err: f64 = heap.iter().map(|c| c.err).sum();
        if err <= rel_tol * total.abs() {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let m = 0.5 * (worst.a + worst.b);
        if m <= worst.a || m >= worst.b {
            // at float resolution; keep it but stop refining it
            heap.push(Cell { err: 0.0, ..worst });
            continue;
        }
        heap.extend(split(&mut f, worst.a, worst.b, worst.value, worst.piece));
    }
    let mut out = vec![0.0; breaks.len().saturating_sub(1)];
    for c in heap {
        out[c.piece] += c.value;
    }
    out
}

/// Standard normal CDF.
pub fn norm_cdf(z: f64) -> f64 {
    0.5 * erf::erfc(-z * FRAC_1_SQRT_2)
}

/// Standard normal survival function, accurate in the upper tail.
pub fn norm_sf(z: f64) -> f64 {
    0.5 * erf::erfc(z * FRAC_1_SQRT_2)
}

pub fn norm_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Standard normal quantile for `p` in (0, 1).
pub fn norm_quantile(p: f64) -> f64 {
    -SQRT_2 * erf::erfc_inv(2.0 * p)
}

/// Trigamma function, the derivative of digamma.
pub fn trigamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 10.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    // asymptotic series with Bernoulli numbers B2..B12
    let inv = 1.0 / x;
    let x2 = inv * inv;
    let series = x2
        * (1.0 / 6.0
            - x2 * (1.0 / 30.0 - x2 * (1.0 / 42.0 - x2 * (1.0 / 30.0 - x2 * (5.0 / 66.0 - x2 * 691.0 / 2730.0)))));
    acc + inv + 0.5 * x2 + inv * series
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_interior_and_boundary_maxima() {
        let s = golden_max(|x| -(x - 0.3).powi(2), 0.0, 1.0, 1e-10);
        assert!((s.arg - 0.3).abs() < 1e-6);
        let s = golden_max(|x| -x, 0.0, 1.0, 1e-10);
        assert_eq!(s.arg, 0.0);
        assert_eq!(s.value, 0.0);
    }

    #[test]
    fn grid_golden_handles_spike_near_endpoint() {
        let peak = 1.0 - 2e-5;
        let s = grid_golden_max(|x| -((x - peak) / 1e-6).abs(), 0.0, 1.0, 64, 1e-12);
        assert!((s.arg - peak).abs() < 1e-9);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(16);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(30)).sum();
        assert!((s - 2.0 / 31.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        let v = gl64_panel(|x| x.exp(), 0.0, 1.0);
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn adaptive_integration_of_power_tail() {
        let breaks: Vec<f64> = std::iter::once(1.0)
            .chain((0..40).map(|k| 1.0 + 2f64.powi(k)))
            .collect();
        let v = integrate_panels(|x| x.powf(-2.5), &breaks, 1e-12);
        let exact = (1.0 - (1.0 + 2f64.powi(39)).powf(-1.5)) / 1.5;
        assert!((v - exact).abs() < 1e-10);
    }

    #[test]
    fn trigamma_matches_known_values() {
        let pi2_6 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((trigamma(1.0) - pi2_6).abs() < 1e-13);
        assert!((trigamma(0.5) - std::f64::consts::PI.powi(2) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn normal_quantile_inverts_cdf() {
        for &p in &[1e-10, 0.01, 0.25, 0.5, 0.9, 1.0 - 1e-9] {
            let z = norm_quantile(p);
            assert!((norm_cdf(z) - p).abs() <= 1e-14 + 1e-10 * p);
        }
    }
}
