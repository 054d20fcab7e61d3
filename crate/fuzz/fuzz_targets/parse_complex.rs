//! Fuzzes the complex decoder: arbitrary bytes must either be rejected with
//! a validation error or produce a complex whose cheap invariants hold.

#![no_main]

use libfuzzer_sys::fuzz_target;
use raagc::combinatorics::{connected_components, restriction};
use raagc::input::parse_complex;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(k) = parse_complex(text) else {
        return;
    };
    let (cc, _) = connected_components(&k);
    assert!(cc <= k.vertex_count());
    // Restricting to the full vertex set changes nothing.
    let full = restriction(&k, &k.vertices().clone()).expect("full restriction");
    let mut a = full.maximal_faces().to_vec();
    let mut b = k.maximal_faces().to_vec();
    a.sort();
    b.sort();
    assert_eq!(a, b);
});
