#![no_main]

use displace_core::syntax::{parse_term, Signature};
use displace_core::term::{normalize, sharp};
use libfuzzer_sys::fuzz_target;

fn sig() -> Signature {
    Signature::from_pairs([("a", 0), ("b", 2), ("c", 0), ("d", 2), ("e", 1), ("f", 3)]).unwrap()
}

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let sig = sig();
    let Ok(t) = parse_term(src, &sig) else { return };
    assert_eq!(parse_term(&t.to_string(), &sig).expect("printed term reparses"), t);
    if t.size() <= 24 {
        let trace = normalize(&t).expect("normalization succeeds");
        assert_eq!(sharp(trace.end()), sharp(&t));
    }
});
