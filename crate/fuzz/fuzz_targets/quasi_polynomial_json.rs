#![no_main]

use ehrlab::qpalg::QuasiPolynomial;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(q) = QuasiPolynomial::from_json_str(s) else { return };
    let text = q.to_json_string();
    let again = QuasiPolynomial::from_json_str(&text).unwrap();
    assert_eq!(again, q);
    assert_eq!(again.to_json_string(), text);
    assert!(q.equivalent(&q));
});
