#![no_main]
use libfuzzer_sys::fuzz_target;
use pbtlab::numsg::{linset_equal, LinearSetRep};

fuzz_target!(|data: &[u8]| {
    let Ok(rep) = serde_json::from_slice::<LinearSetRep>(data) else { return };
    let text = serde_json::to_string(&rep).unwrap();
    let back: LinearSetRep = serde_json::from_str(&text).unwrap();
    assert_eq!(back, rep);
    assert!(linset_equal(&rep, &back));
    for x in 0..64 {
        let _ = rep.contains(x);
    }
});
