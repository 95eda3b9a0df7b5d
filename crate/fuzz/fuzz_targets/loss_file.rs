#![no_main]

use libfuzzer_sys::fuzz_target;
use tailduality::distributions::parse_losses;
use tailduality::EmpiricalSample;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(values) = parse_losses(text) {
        assert!(!values.is_empty());
        assert!(values.iter().all(|v| v.is_finite()));
        let s = EmpiricalSample::from_text(text).expect("parsed text builds a sample");
        assert!(s.values().windows(2).all(|w| w[0] <= w[1]));
    }
});
