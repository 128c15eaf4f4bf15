#![no_main]

use displace_core::hd;
use displace_core::serial::{hd_from_json, hd_to_json};
use displace_core::syntax::Signature;
use libfuzzer_sys::fuzz_target;

fn sig() -> Signature {
    Signature::from_pairs([("a", 0), ("b", 2), ("c", 0), ("d", 2), ("e", 1), ("f", 3)]).unwrap()
}

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let sig = sig();
    if let Ok(d) = hd_from_json(src, Some(&sig)) {
        let _ = hd::check(&d);
        let text = hd_to_json(&d).to_string();
        assert_eq!(hd_from_json(&text, Some(&sig)).expect("written derivation reparses"), d);
    }
});
