#![no_main]

use libfuzzer_sys::fuzz_target;
use tailduality_cli::sweep::SweepSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = text.parse::<SweepSpec>() {
        // cap the allocation; the parser allows up to a million points
        if s.points <= 10_000 {
            let g = s.grid();
            assert_eq!(g.len(), s.points);
            assert_eq!((g[0], g[g.len() - 1]), (s.lo, s.hi));
        }
    }
});
