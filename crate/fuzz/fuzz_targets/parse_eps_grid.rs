#![no_main]

use libfuzzer_sys::fuzz_target;
use scinact::textio::parse_eps_grid;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(grid) = parse_eps_grid(text) {
        assert!(!grid.is_empty());
        assert!(grid.iter().all(|e| (0.0..=1.0).contains(e)));
    }
});
