#![no_main]

use libfuzzer_sys::fuzz_target;
use tailduality::ModelSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    // file-backed specs would read from disk
    if text.contains("file") {
        return;
    }
    if let Ok(spec) = text.parse::<ModelSpec>() {
        if let Ok(model) = spec.resolve() {
            let m = model.mean();
            assert!(!m.is_nan());
            let q = model.var_left(0.5);
            assert!(!q.is_nan());
        }
    }
});
