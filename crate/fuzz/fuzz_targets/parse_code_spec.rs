#![no_main]

use libfuzzer_sys::fuzz_target;
use scinact::textio::{format_code_spec, parse_code_spec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = parse_code_spec(text) {
        let printed = format_code_spec(&spec);
        assert_eq!(parse_code_spec(&printed).unwrap(), spec);
    }
});
