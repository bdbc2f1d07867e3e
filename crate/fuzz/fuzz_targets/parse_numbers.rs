#![no_main]

use libfuzzer_sys::fuzz_target;
use phasecrit::parse::{parse_angles, parse_distances, parse_real};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(x) = parse_real(s) {
            assert!(x.is_finite());
        }
        if let Ok(v) = parse_angles(s) {
            assert!(v.iter().all(|x| x.is_finite()));
        }
        if let Ok(v) = parse_distances(s) {
            assert!(v.iter().all(|&m| m > 0));
        }
    }
});
