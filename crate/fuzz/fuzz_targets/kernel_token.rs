#![no_main]

use libfuzzer_sys::fuzz_target;
use tailduality::oce::{validate_kernel, BuiltinKernel};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(k) = text.parse::<BuiltinKernel>() {
        validate_kernel(&k).expect("parsed kernels are valid");
        let again: BuiltinKernel = k.to_string().parse().expect("display round-trips");
        assert_eq!(again, k);
    }
});
