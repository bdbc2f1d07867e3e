#![no_main]

use clap::Parser;
use libfuzzer_sys::fuzz_target;
use phasecrit_cli::Cli;

// Arguments are NUL-separated.
fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let args = std::iter::once("phasecrit").chain(s.split('\0'));
        let _ = Cli::try_parse_from(args);
    }
});
