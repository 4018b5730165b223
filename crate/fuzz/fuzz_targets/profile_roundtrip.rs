#![no_main]

use libfuzzer_sys::fuzz_target;
use spincom::profile::{parse_profile, serialize_profile};

// Any profile the parser accepts must survive serialize -> parse without
// changing a single bit of the parameter state.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(profile) = parse_profile(text) else {
        return;
    };
    let dumped = serialize_profile(&profile);
    let reparsed = parse_profile(&dumped).expect("serialized profile must parse");
    assert_eq!(reparsed.params, profile.params);
    assert_eq!(reparsed.drive, profile.drive);
    assert_eq!(reparsed.grids, profile.grids);
    assert_eq!(reparsed.allow_unstable, profile.allow_unstable);
});
