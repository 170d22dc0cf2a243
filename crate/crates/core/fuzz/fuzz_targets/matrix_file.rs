#![no_main]

use carwb::matrix_file::{format_matrix_file, parse_matrix_file};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(ms) = parse_matrix_file(text) {
        let out = format_matrix_file(&ms);
        let back = parse_matrix_file(&out).expect("formatted file parses");
        assert_eq!(format_matrix_file(&back), out);
    }
});
