#![no_main]

use libfuzzer_sys::fuzz_target;
use phasecrit::parse::parse_range;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(r) = parse_range(s) {
            assert!(r.lo < r.hi && r.points >= 2);
        }
    }
});
