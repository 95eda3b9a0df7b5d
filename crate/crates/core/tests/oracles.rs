//! Values frozen from independent computations (closed forms, or scipy
//! quadrature and optimizers run offline).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tailduality::calibration::{self, fit_mle, Family};
use tailduality::uncertainty::{self, UncertaintySpec};
use tailduality::{dual, EmpiricalSample, LossModel, Parametric};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + b.abs())
}

macro_rules! assert_close {
    ($a:expr, $b:expr, $tol:expr) => {{
        let (a, b) = ($a, $b);
        assert!(close(a, b, $tol), "{} = {a}, expected {b}", stringify!($a));
    }};
}

fn fixture() -> EmpiricalSample {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/lognormal_180.txt");
    EmpiricalSample::from_file(path).unwrap()
}

#[test]
fn parametric_tail_quantities() {
    let n = LossModel::normal(0.0, 1.0).unwrap();
    assert_close!(dual::es(&n, 0.95).unwrap(), 2.062712807818915, 1e-9);
    let t5 = LossModel::student_t(5.0, 0.0, 1.0).unwrap();
    assert_close!(dual::es(&t5, 0.99).unwrap(), 4.4524291118177635, 1e-7);
    let w = LossModel::weibull(1.5, 1.0).unwrap();
    assert_close!(dual::es(&w, 0.9).unwrap(), 2.1985520964706, 1e-9);
    let ln = LossModel::lognormal(0.0, 0.5).unwrap();
    assert_close!(ln.upper_partial_expectation(1.5), 0.11519290007533414, 1e-9);
    let g = LossModel::gamma(2.0, 1.0).unwrap();
    assert_close!(g.upper_partial_expectation(2.0), 0.5413411329464508, 1e-9);
}

#[test]
fn parametric_wasserstein() {
    let n = LossModel::normal(0.0, 1.0).unwrap();
    let e = LossModel::exponential(1.0).unwrap();
    let d = calibration::wasserstein_distance(&n, &e, 1.0).unwrap();
    assert_close!(d.value, 1.0, 1e-7);
    let ln = LossModel::lognormal(0.0, 0.5).unwrap();
    let g = LossModel::gamma(2.0, 1.0).unwrap();
    let d = calibration::wasserstein_distance(&ln, &g, 2.0).unwrap();
    assert_close!(d.value, 1.1882303607138467, 1e-6);
}

#[test]
fn mle_on_fixture() {
    let x = fixture();
    assert_eq!(x.len(), 180);

    let f = fit_mle(&x, Family::Lognormal).unwrap();
    assert!(f.converged);
    match *f.model.as_parametric().unwrap() {
        Parametric::Lognormal { mu, sigma } => {
            assert_close!(mu, 0.9267135539919983, 1e-10);
            assert_close!(sigma, 0.8857806225410043, 1e-10);
        }
        other => panic!("unexpected model {other:?}"),
    }

    let f = fit_mle(&x, Family::Gamma).unwrap();
    assert!(f.converged && f.iterations <= 20, "{f:?}");
    match *f.model.as_parametric().unwrap() {
        Parametric::Gamma { shape, rate } => {
            assert_close!(shape, 1.4288322478269482, 1e-7);
            assert_close!(rate, 0.3832994432467462, 1e-7);
        }
        other => panic!("unexpected model {other:?}"),
    }

    let f = fit_mle(&x, Family::Weibull).unwrap();
    assert!(f.converged && f.gradient_norm <= 1e-10, "{f:?}");
    match *f.model.as_parametric().unwrap() {
        Parametric::Weibull { shape, scale } => {
            assert_close!(shape, 1.1266035240334593, 1e-7);
            assert_close!(scale, 3.9195933580705424, 1e-7);
        }
        other => panic!("unexpected model {other:?}"),
    }
    assert_close!(f.log_likelihood, -414.4309595341, 1e-9);
}

#[test]
fn delta0_on_fixture() {
    let x = fixture();
    let want = [
        (Family::Lognormal, 1.017704465162156),
        (Family::Weibull, 1.5574786809046683),
        (Family::Gamma, 1.6417831882487002),
    ];
    for (family, d) in want {
        let fit = fit_mle(&x, family).unwrap();
        let got = calibration::delta0(&x, &fit, 2.0).unwrap();
        assert!(got.diagnostic.is_none(), "{family}: {got:?}");
        assert_close!(got.value, d, 1e-6);
    }
}

#[test]
fn fixture_quartiles() {
    let (q1, q2, q3) = calibration::quartiles(&fixture()).unwrap();
    assert_eq!(q1, 1.432980633487635);
    assert_eq!(q2, 2.6642871752472086);
    assert_eq!(q3, 4.6274320726221845);
}

#[test]
fn lognormal_first_quartile() {
    // exp(-z_0.75) with z_0.75 = 0.6744897501960817
    let m = LossModel::lognormal(0.0, 1.0).unwrap();
    assert_close!(m.var_left(0.25), 0.5094162838632339, 1e-12);
}

fn inverse_cdf_draws(model: &LossModel, n: usize, seed: u64) -> EmpiricalSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u: Vec<f64> = (0..n).map(|_| rng.random_range(f64::EPSILON..1.0)).collect();
    EmpiricalSample::new(model.quantile_sample(&u)).unwrap()
}

#[test]
fn gamma_fit_recovers_shape() {
    let truth = LossModel::gamma(2.0, 1.0).unwrap();
    let x = inverse_cdf_draws(&truth, 100_000, 7);
    let f = fit_mle(&x, Family::Gamma).unwrap();
    let Parametric::Gamma { shape, rate } = *f.model.as_parametric().unwrap() else {
        panic!("gamma fit returned {:?}", f.model);
    };
    assert!((shape - 2.0).abs() < 0.1, "shape {shape}");
    assert!((rate - 1.0).abs() < 0.05, "rate {rate}");
}

#[test]
fn delta0_shrinks_with_sample_size() {
    let truth = LossModel::lognormal(1.0, 0.5).unwrap();
    let small = inverse_cdf_draws(&truth, 100, 11);
    let large = inverse_cdf_draws(&truth, 10_000, 11);
    let d = |x: &EmpiricalSample| {
        let fit = fit_mle(x, Family::Lognormal).unwrap();
        calibration::delta0(x, &fit, 2.0).unwrap().value
    };
    assert!(d(&large) < d(&small));
}

#[test]
fn pareto_ratio_example() {
    // W2 ball of radius 1 about Pareto(2), t = 1: (2 + 1 - 1) / 1 ... knee at 1.5
    let b = LossModel::pareto(2.0).unwrap();
    let r = calibration::ratio_r(&b, 1.0, 2.0, 2.0).unwrap();
    // (1.5^2 / 2) / (1 / 2)
    assert_close!(r, 2.25, 1e-9);
    assert_eq!(calibration::ratio_r(&b, 0.0, 2.0, 2.0).unwrap(), 1.0);
}

#[test]
fn moment_ball_closed_form() {
    let spec = UncertaintySpec::moment(2.0, 1.0, 2.0).unwrap();
    let v = uncertainty::worst_mean_excess(&spec, 0.5).unwrap().value;
    assert_close!(v, 0.5 * (0.5 + (4.0f64 + 0.25).sqrt()), 1e-9);
}
