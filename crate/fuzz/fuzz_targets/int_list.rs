#![no_main]
use libfuzzer_sys::fuzz_target;
use pbtlab::numsg::parse_int_list;

fuzz_target!(|data: &str| {
    if let Ok(xs) = parse_int_list(data) {
        let joined = xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        assert_eq!(parse_int_list(&joined).unwrap(), xs);
    }
});
