#![no_main]
use libfuzzer_sys::fuzz_target;
use pbtlab::linset_teach::{student_linset, student_nelinset, student_shifted_nelinset, LinsetSample};

// First byte picks k, the rest are sample values.
fuzz_target!(|data: &[u8]| {
    let Some((&k, rest)) = data.split_first() else { return };
    let k = (k % 4) as usize + 1;
    let s = LinsetSample::new(rest.iter().take(6).map(|&b| u64::from(b % 96)).collect());
    if let Ok(l) = student_linset(&s, k) {
        assert!(s.values().iter().all(|&x| l.contains(x)));
    }
    if let Ok(l) = student_nelinset(&s, k) {
        assert!(s.values().iter().all(|&x| l.contains(x)));
    }
    if let Ok(l) = student_shifted_nelinset(&s, k) {
        assert!(s.values().iter().all(|&x| l.contains(x)));
    }
});
