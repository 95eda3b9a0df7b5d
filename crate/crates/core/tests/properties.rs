use proptest::prelude::*;

use tailduality::calibration::{self, wasserstein_distance};
use tailduality::oce::{self, BoundedModel, BuiltinKernel, Kernel};
use tailduality::{dual, LossModel};

fn sample(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    // half-integers force ties
    prop::collection::vec(
        prop_oneof![(-20i32..=20).prop_map(|k| k as f64 / 2.0), -10.0f64..10.0],
        1..max_len,
    )
}

fn emp(v: &[f64]) -> LossModel {
    LossModel::empirical(v.to_vec()).unwrap()
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn near(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reverse_formula(x in sample(40), t in -12.0f64..12.0) {
        let direct = x.iter().map(|&v| (v - t).max(0.0)).sum::<f64>() / x.len() as f64;
        let r = dual::mean_excess_via_reverse(&emp(&x), t).unwrap();
        prop_assert!(near(r.value, direct, 1e-12), "{} vs {}", r.value, direct);
        prop_assert!(r.optimizer.lo <= r.optimizer.hi);
    }

    #[test]
    fn forward_formula(x in sample(40), a in 0.001f64..0.999) {
        let m = emp(&x);
        let r = dual::es_via_ru(&m, a).unwrap();
        let es = dual::es(&m, a).unwrap();
        prop_assert!(near(r.value, es, 1e-12));
        prop_assert!(r.optimizer.lo <= r.optimizer.hi);
        // ES dominates the mean and VaR, and the left ES sits below
        prop_assert!(es >= mean(&x) - 1e-12 * (1.0 + es.abs()));
        prop_assert!(es >= m.var_left(a) - 1e-12 * (1.0 + es.abs()));
        prop_assert!(dual::es_left(&m, a).unwrap() <= es + 1e-12 * (1.0 + es.abs()));
    }

    #[test]
    fn min_and_excess_add_to_mean(x in sample(40), t in -12.0f64..12.0) {
        let m = emp(&x);
        let lo = dual::mean_min_via_reverse(&m, t).unwrap().value;
        let hi = dual::mean_excess_via_reverse(&m, t).unwrap().value;
        prop_assert!(near(lo + hi, mean(&x), 1e-12));
    }

    #[test]
    fn conjugate_parity(x in sample(40), t in -12.0f64..12.0) {
        let m = emp(&x);
        let a = oce::conjugate_f1(&m, t).unwrap().value;
        let b = oce::conjugate_f2(&m, t).unwrap().value;
        prop_assert!((a - b - mean(&x)).abs() <= 1e-10 * (1.0 + a.abs()));
    }

    #[test]
    fn biconjugation(x in sample(25), alpha in 0.0f64..1.0) {
        let m = emp(&x);
        let n = x.len();
        let kinks: Vec<(f64, f64)> = (0..=n)
            .map(|k| {
                let a = k as f64 / n as f64;
                (a, oce::f1(&m, a).unwrap())
            })
            .collect();
        // f1 is linear between kinks, so the sampled transform is exact
        let ts: Vec<f64> = x.clone();
        let conj = oce::legendre_transform(&kinks, &ts);
        for (&t, &c) in ts.iter().zip(&conj) {
            let direct = oce::conjugate_f1(&m, t).unwrap().value;
            prop_assert!(near(c, direct, 1e-12));
        }
        let dual_points: Vec<(f64, f64)> = ts.iter().copied().zip(conj).collect();
        let back = oce::legendre_transform(&dual_points, &[alpha])[0];
        let f1 = oce::f1(&m, alpha).unwrap();
        prop_assert!(near(back, f1, 1e-10), "{back} vs {f1}");
    }

    #[test]
    fn f1_f2_convex(x in sample(40), a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let m = emp(&x);
        let c = 0.5 * (a + b);
        for f in [oce::f1, oce::f2] {
            let (fa, fb, fc) = (f(&m, a).unwrap(), f(&m, b).unwrap(), f(&m, c).unwrap());
            prop_assert!(fc <= 0.5 * (fa + fb) + 1e-12 * (1.0 + fa.abs() + fb.abs()));
        }
    }

    #[test]
    fn wasserstein_axioms(x in sample(20), y in sample(20), z in sample(20), p in 1.0f64..4.0) {
        let (a, b, c) = (emp(&x), emp(&y), emp(&z));
        let d = |u: &LossModel, v: &LossModel| wasserstein_distance(u, v, p).unwrap().value;
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-10);
        prop_assert_eq!(d(&a, &a), 0.0);
        prop_assert!(d(&a, &b) >= 0.0);
    }

    #[test]
    fn wasserstein_shift(x in sample(20), h in -5.0f64..5.0, p in 1.0f64..4.0) {
        let shifted: Vec<f64> = x.iter().map(|v| v + h).collect();
        let d = wasserstein_distance(&emp(&x), &emp(&shifted), p).unwrap().value;
        prop_assert!((d - h.abs()).abs() <= 1e-12 * (1.0 + h.abs()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reverse_oce(x in sample(12), t in -12.0f64..12.0, which in 0usize..3) {
        let k = [
            BuiltinKernel::PositivePart,
            BuiltinKernel::ScaledPositivePart { alpha: 0.5 },
            BuiltinKernel::Entropic,
        ][which];
        let model = BoundedModel::new(&emp(&x)).unwrap();
        let direct = x.iter().map(|&v| k.value(v - t)).sum::<f64>() / x.len() as f64;
        let sup = oce::expected_kernel_via_reverse(&model, &k, t).unwrap().value;
        prop_assert!((sup - direct).abs() <= 1e-7 * (1.0 + direct.abs()), "{k}: {sup} vs {direct}");
    }

    #[test]
    fn scaled_positive_part_is_es(x in sample(30), alpha in 0.0f64..0.99) {
        let model = BoundedModel::new(&emp(&x)).unwrap();
        let k = BuiltinKernel::scaled_positive_part(alpha).unwrap();
        let r = oce::oce(&model, &k, 1.0).unwrap().value;
        let es = if alpha == 0.0 { mean(&x) } else { dual::es(&emp(&x), alpha).unwrap() };
        prop_assert!(near(r, es, 1e-8), "{r} vs {es}");
    }

    #[test]
    fn oce_monotone_in_beta(x in sample(20), b1 in 0.05f64..1.0, b2 in 0.05f64..1.0) {
        // for x+, R_beta = ES_{1 - beta}, which decreases in beta
        let model = BoundedModel::new(&emp(&x)).unwrap();
        let k = BuiltinKernel::PositivePart;
        let (lo, hi) = if b1 <= b2 { (b1, b2) } else { (b2, b1) };
        let r_lo = oce::oce(&model, &k, lo).unwrap().value;
        let r_hi = oce::oce(&model, &k, hi).unwrap().value;
        prop_assert!(r_hi <= r_lo + 1e-8 * (1.0 + r_lo.abs()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn ratio_monotone_convex_in_radius(mu in -0.5f64..1.0, sigma in 0.3f64..1.0, q in 0.1f64..0.9) {
        let b = LossModel::lognormal(mu, sigma).unwrap();
        let t = b.var_left(q);
        let r: Vec<f64> = (0..7)
            .map(|i| calibration::ratio_r(&b, 0.25 * i as f64, t, 2.0).unwrap())
            .collect();
        prop_assert_eq!(r[0], 1.0);
        for w in r.windows(2) {
            prop_assert!(w[1] >= w[0] - 1e-9);
        }
        for w in r.windows(3) {
            prop_assert!(w[1] <= 0.5 * (w[0] + w[2]) + 1e-8);
        }
    }
}
