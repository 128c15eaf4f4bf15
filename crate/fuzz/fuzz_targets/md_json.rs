#![no_main]

use displace_core::md;
use displace_core::serial::{md_from_json, md_to_json};
use displace_core::syntax::Signature;
use libfuzzer_sys::fuzz_target;

fn sig() -> Signature {
    Signature::from_pairs([("a", 0), ("b", 2), ("c", 0), ("d", 2), ("e", 1), ("f", 3)]).unwrap()
}

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let sig = sig();
    if let Ok(d) = md_from_json(src, Some(&sig)) {
        let _ = md::check_m(&d);
        let text = md_to_json(&d).to_string();
        assert_eq!(md_from_json(&text, Some(&sig)).expect("written derivation reparses"), d);
    }
});
