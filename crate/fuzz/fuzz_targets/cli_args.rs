#![no_main]

use libfuzzer_sys::fuzz_target;

// argv split on NUL bytes; arguments naming files are skipped
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.contains("file") || text.contains("sweep") || text.contains("points") {
        return;
    }
    let args = std::iter::once("tailduality").chain(text.split('\0'));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = tailduality_cli::run_with_env(args, None, &mut out, &mut err);
    assert!((0..=2).contains(&code));
});
