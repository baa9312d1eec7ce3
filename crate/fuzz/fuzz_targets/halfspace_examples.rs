#![no_main]
use libfuzzer_sys::fuzz_target;
use pbtlab::halfspaces::{decode_general, decode_homogeneous, is_consistent, parse_examples};
use pbtlab::rational::q;

fuzz_target!(|data: &str| {
    let Ok(examples) = parse_examples(data) else { return };
    let Some(d) = examples.first().map(|e| e.x.len()) else { return };
    if d == 0 || d > 4 || examples.len() > 8 {
        return;
    }
    if let Ok(h) = decode_homogeneous(&examples, d) {
        assert_eq!(h.b, q(0));
    }
    if let Ok(h) = decode_general(&examples, d) {
        assert!(is_consistent(&h, &examples).unwrap());
    }
});
