#![no_main]

use libfuzzer_sys::fuzz_target;
use ramsey_goodness::pipeline::parse_ratio;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = parse_ratio(s) {
        // the reduced a/b form reads back as the same value
        assert_eq!(parse_ratio(&format!("{}/{}", r.numer(), r.denom())).unwrap(), r);
    }
});
