#![no_main]

use displace_core::serial::{trace_from_json, trace_to_json};
use displace_core::syntax::Signature;
use libfuzzer_sys::fuzz_target;

fn sig() -> Signature {
    Signature::from_pairs([("a", 0), ("b", 2), ("c", 0), ("d", 2), ("e", 1), ("f", 3)]).unwrap()
}

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let sig = sig();
    if let Ok(t) = trace_from_json(src, &sig) {
        let _ = t.validate();
        let text = trace_to_json(&t).to_string();
        assert_eq!(trace_from_json(&text, &sig).expect("written trace reparses"), t);
    }
});
