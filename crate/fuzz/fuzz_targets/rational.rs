#![no_main]
use libfuzzer_sys::fuzz_target;
use pbtlab::rational::{format_rational, parse_rational, parse_rational_list};

fuzz_target!(|data: &str| {
    if let Ok(x) = parse_rational(data) {
        assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }
    let _ = parse_rational_list(data);
});
