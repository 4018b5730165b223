#![no_main]

use libfuzzer_sys::fuzz_target;

// The parser must reject or accept arbitrary input without panicking, and an
// accepted profile must already satisfy the parameter invariants.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(profile) = spincom::profile::parse_profile(text) {
        profile.params.validate().unwrap();
        profile.drive.validate().unwrap();
    }
});
