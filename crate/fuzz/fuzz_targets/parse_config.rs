#![no_main]

use displace_core::syntax::{parse_config, Signature};
use displace_core::term::{sharp, term_of_config};
use libfuzzer_sys::fuzz_target;

fn sig() -> Signature {
    Signature::from_pairs([("a", 0), ("b", 2), ("c", 0), ("d", 2), ("e", 1), ("f", 3)]).unwrap()
}

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(c) = parse_config(src, &sig()) {
        assert_eq!(sharp(&term_of_config(&c)), c);
    }
});
