//! Fuzzes the word syntax: whatever parses and reduces must survive a
//! format/parse round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;
use raagc::freegroup::reduce;
use raagc::input::{format_word, infer_alphabet, parse_word, parse_word_syllables};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(sylls) = parse_word_syllables(text) else {
        return;
    };
    let m = infer_alphabet(&sylls);
    // Out-of-range indices (e.g. 0) are rejected here, not a crash.
    let Ok(w) = reduce(m, &sylls) else {
        return;
    };
    let printed = format_word(&w);
    let back = parse_word(&printed, m).expect("formatter output parses");
    assert_eq!(back, w);
});
