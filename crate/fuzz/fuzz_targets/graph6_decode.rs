#![no_main]

use libfuzzer_sys::fuzz_target;
use ramsey_goodness::graph6;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = graph6::decode(s) {
        // whatever decodes must re-encode to something that decodes to the same graph
        let again = graph6::decode(&graph6::encode(&g)).expect("re-encoded graph6 decodes");
        assert_eq!(g, again);
    }
    let _ = graph6::decode_lines(s);
});
