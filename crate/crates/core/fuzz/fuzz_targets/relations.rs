#![no_main]

use carwb::presentation::{parse_relations, parse_sum};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let n = data.first().map_or(1, |b| (b % 4) as usize + 1);
    if let Ok(p) = parse_relations(text, n) {
        let again = parse_relations(&p.render(), n).expect("rendered relations parse");
        assert_eq!(again.render(), p.render());
    }
    let _ = parse_sum(text, n);
});
