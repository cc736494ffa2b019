#![no_main]

use libfuzzer_sys::fuzz_target;

use curvegeom::correspondence::ProfileSide;
use curvegeom::io::{parse_profile_csv, write_profile_csv};

// Accepted curvature profiles round-trip bitwise through emission.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for side in [ProfileSide::Spherical, ProfileSide::Rectifying] {
        if let Ok(profile) = parse_profile_csv(text, side, 0.0) {
            assert_eq!(profile.functions.len(), profile.dimension - 1);
            let emitted = write_profile_csv(&profile);
            let again = parse_profile_csv(&emitted, side, 0.0)
                .expect("emitted profiles must re-parse");
            assert_eq!(again.s, profile.s);
            assert_eq!(again.functions, profile.functions);
        }
    }
});
