#![no_main]

use displace_core::hd::HSequent;
use displace_core::syntax::{parse_hsequent, Signature};
use libfuzzer_sys::fuzz_target;

fn sig() -> Signature {
    Signature::from_pairs([("a", 0), ("b", 2), ("c", 0), ("d", 2), ("e", 1), ("f", 3)]).unwrap()
}

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok((g, t)) = parse_hsequent(src, &sig()) {
        let _ = HSequent::new(g, t);
    }
});
