#![no_main]

//! Input: a spec file, a line `---`, then a received word over {0,1,e}.
//! Every decoder must agree with the MAP oracle or refuse the word.

use libfuzzer_sys::fuzz_target;
use scinact::channel::TernaryWord;
use scinact::decoders::{
    map_oracle, sc_decode, sc_inactivation_decode, scl_decode, InactivationOptions, MapDecoder,
};
use scinact::textio::parse_code_spec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Some((spec_text, word)) = text.split_once("\n---\n") else { return };
    let Ok(spec) = parse_code_spec(spec_text) else { return };
    if spec.n() > 64 {
        return;
    }
    let Ok(y) = word.parse::<TernaryWord>() else { return };
    let Ok(map) = map_oracle(&spec, &y) else {
        // not a codeword of this code, or the wrong length
        let r = sc_inactivation_decode(&spec, &y, InactivationOptions::default());
        assert!(r.map_or(true, |r| !r.is_success()));
        return;
    };
    let inact = sc_inactivation_decode(&spec, &y, InactivationOptions::default()).unwrap();
    assert_eq!((inact.status, &inact.codeword), (map.status, &map.codeword));
    let prepared = MapDecoder::new(&spec).unwrap().decode(&y).unwrap();
    assert_eq!(prepared.codeword, map.codeword);
    if let Some(c) = &map.codeword {
        assert!(y.is_consistent_with(c));
    }
    let sc = sc_decode(&spec, &y).unwrap();
    if sc.is_success() {
        assert_eq!(sc.codeword, map.codeword);
    }
    if let Ok(scl) = scl_decode(&spec, &y, 4) {
        if scl.is_success() {
            assert_eq!(scl.codeword, map.codeword);
        }
    }
});
