#![no_main]

use libfuzzer_sys::fuzz_target;
use tailduality::{dual, LossModel};

fuzz_target!(|data: &[u8]| {
    if data.len() < 16 {
        return;
    }
    let t = f64::from_le_bytes(data[..8].try_into().unwrap());
    let a = (data[8] as f64 + 0.5) / 256.0;
    let values: Vec<f64> = data[16..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .filter(|v| v.is_finite() && v.abs() < 1e12)
        .collect();
    if values.is_empty() || !t.is_finite() || t.abs() > 1e12 {
        return;
    }
    let m = LossModel::empirical(values.clone()).unwrap();
    let r = dual::mean_excess_via_reverse(&m, t).unwrap();
    let direct = values.iter().map(|&v| (v - t).max(0.0)).sum::<f64>() / values.len() as f64;
    let scale = values.iter().fold(t.abs(), |s, v| s.max(v.abs()));
    assert!((r.value - direct).abs() <= 1e-9 * (1.0 + scale));
    assert!(r.optimizer.lo <= r.optimizer.hi);
    let ru = dual::es_via_ru(&m, a).unwrap();
    assert!((ru.value - dual::es(&m, a).unwrap()).abs() <= 1e-9 * (1.0 + scale));
});
