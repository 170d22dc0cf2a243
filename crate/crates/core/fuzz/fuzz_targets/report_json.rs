#![no_main]

use carwb::report::Report;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = Report::from_json(text) {
        let json = r.to_json();
        let back = Report::from_json(&json).expect("canonical json parses");
        assert_eq!(back.to_json(), json);
        let _ = r.to_text();
    }
});
