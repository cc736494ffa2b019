#![no_main]

use libfuzzer_sys::fuzz_target;

// The builtin-spec parser and the families behind it must never panic;
// accepted specs must be evaluable on their default domain.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = curvegeom::io::parse_builtin_spec(text) {
        let (lo, hi) = spec.default_domain();
        assert!(lo.is_finite() && hi.is_finite() && lo < hi);
        let mid = 0.5 * (lo + hi);
        let jets = spec
            .analytic()
            .expect("builtin specs are analytic")
            .eval_jets(mid, 2);
        assert_eq!(jets[0].dim(), spec.dimension());
        assert!(jets[0].iter().all(|x| x.is_finite()));
    }
});
