#![no_main]
use libfuzzer_sys::fuzz_target;
use pbtlab::closure::ClosedSetRep;

fuzz_target!(|data: &[u8]| {
    let Ok(rep) = serde_json::from_slice::<ClosedSetRep>(data) else { return };
    if rep.validate().is_ok() {
        let text = serde_json::to_string(&rep).unwrap();
        let back: ClosedSetRep = serde_json::from_str(&text).unwrap();
        back.validate().expect("canonical sets stay canonical");
    }
});
