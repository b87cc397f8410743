#![no_main]

use libfuzzer_sys::fuzz_target;
use scinact::channel::TernaryWord;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(word) = text.parse::<TernaryWord>() {
        assert_eq!(word.to_string().parse::<TernaryWord>().unwrap(), word);
    }
});
