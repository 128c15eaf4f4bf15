#![no_main]

use displace_core::md::MSequent;
use displace_core::syntax::{parse_msequent, Signature};
use libfuzzer_sys::fuzz_target;

fn sig() -> Signature {
    Signature::from_pairs([("a", 0), ("b", 2), ("c", 0), ("d", 2), ("e", 1), ("f", 3)]).unwrap()
}

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok((x, t)) = parse_msequent(src, &sig()) {
        let _ = MSequent::new(x, t);
    }
});
