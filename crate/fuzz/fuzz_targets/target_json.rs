#![no_main]

use ehrlab::polygeom::Target;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // hull computation is exponential in the dimension; keep inputs small
    if data.len() > 2048 {
        return;
    }
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(t) = Target::from_json_str(s) else { return };
    let again = Target::from_json_str(&t.to_json_value().to_string()).unwrap();
    assert_eq!(again, t);
    for p in t.pieces() {
        for v in p.vertices() {
            assert!(p.contains(v).unwrap());
        }
    }
});
