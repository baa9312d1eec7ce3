#![no_main]
use libfuzzer_sys::fuzz_target;
use pbtlab::dims::Budget;
use pbtlab::gallery;
use pbtlab::report::{report_from_json, verify_pbtd1_witness, verify_report, Measure};

fuzz_target!(|data: &[u8]| {
    let Ok(doc) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    let class = gallery::k_choose_l(3, 1).unwrap();
    let budget = Budget::default();
    if let Ok(r) = report_from_json(&class, &doc) {
        for m in Measure::ALL {
            let _ = verify_report(&class, m, &r, &budget);
        }
    }
    let _ = verify_pbtd1_witness(&class, &doc, false);
    let _ = verify_pbtd1_witness(&class, &doc, true);
});
