#![no_main]

use libfuzzer_sys::fuzz_target;
use ramsey_goodness::TwoColoring;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(col) = TwoColoring::parse(s) {
        assert_eq!(TwoColoring::parse(&col.to_text()).unwrap(), col);
        assert_eq!(TwoColoring::parse(&col.to_graph6()).unwrap(), col);
    }
});
