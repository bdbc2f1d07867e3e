#![no_main]

use libfuzzer_sys::fuzz_target;
use phasecrit::parse::parse_phase_point;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = parse_phase_point(s) {
            assert_eq!(parse_phase_point(&p.to_string()).ok(), Some(p));
        }
    }
});
