#![no_main]

use libfuzzer_sys::fuzz_target;

// The curve-table parser must never panic, and accepted tables must satisfy
// the documented invariants.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(table) = curvegeom::io::parse_curve_csv(text) {
        assert!(table.t.len() >= 7);
        assert!(table.dim() >= 2);
        for w in table.t.windows(2) {
            assert!(w[1] > w[0], "parameter must be strictly increasing");
        }
        for p in &table.points {
            assert_eq!(p.dim(), table.dim());
            assert!(p.iter().all(|x| x.is_finite()));
        }
    }
});
