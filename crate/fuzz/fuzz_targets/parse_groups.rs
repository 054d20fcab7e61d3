//! Fuzzes the vertex-group decoder: accepted specs must respect the
//! order >= 2 invariant and report a consistent vertex count.

#![no_main]

use libfuzzer_sys::fuzz_target;
use raagc::graphproduct::VertexGroup;
use raagc::input::parse_groups;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(spec) = parse_groups(text) else {
        return;
    };
    assert_eq!(spec.m(), spec.groups().len());
    assert!(spec.groups().iter().all(|g| match g {
        VertexGroup::InfiniteCyclic => true,
        VertexGroup::Cyclic { order } => *order >= 2,
    }));
});
