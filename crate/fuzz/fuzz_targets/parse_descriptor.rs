//! Fuzzes the descriptor and signed-factor decoders: accepted values must
//! be structurally valid and round-trip through their formatters.

#![no_main]

use libfuzzer_sys::fuzz_target;
use raagc::input::{format_descriptor, format_factor, parse_descriptor, parse_factor};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(d) = parse_descriptor(text) {
        d.validate_structure().expect("accepted descriptor is valid");
        let printed = format_descriptor(&d).expect("valid descriptor prints");
        assert_eq!(parse_descriptor(&printed).expect("printed form parses"), d);
    }
    if let Ok(f) = parse_factor(text) {
        assert!(f.sign == 1 || f.sign == -1);
        let printed = format_factor(&f).expect("valid factor prints");
        assert_eq!(parse_factor(&printed).expect("printed form parses"), f);
    }
});
