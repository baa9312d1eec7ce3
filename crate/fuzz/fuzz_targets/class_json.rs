#![no_main]
use libfuzzer_sys::fuzz_target;
use pbtlab::class::{load_class, save_class};

fuzz_target!(|data: &[u8]| {
    if let Ok(class) = load_class(data) {
        let again = load_class(&save_class(&class)).expect("saved classes load");
        assert_eq!(again, class);
    }
});
