#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(v) = curvegeom::io::parse_vertex(text) {
        assert!((2..=16).contains(&v.dim()));
        assert!(v.iter().all(|x| x.is_finite()));
    }
});
