#![no_main]

use displace_core::syntax::{parse_type, Signature};
use libfuzzer_sys::fuzz_target;

fn sig() -> Signature {
    Signature::from_pairs([("a", 0), ("b", 2), ("c", 0), ("d", 2), ("e", 1), ("f", 3)]).unwrap()
}

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let sig = sig();
    if let Ok(ty) = parse_type(src, &sig) {
        let again = parse_type(&ty.to_string(), &sig).expect("printed type reparses");
        assert_eq!(again, ty);
    }
});
