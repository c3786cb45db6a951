#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(circuit) = qcmap_core::parse_circuit(text) {
            // anything that parses must survive the print/parse round trip
            let printed = qcmap_core::print_circuit(&circuit);
            let reparsed = qcmap_core::parse_circuit(&printed).expect("printed circuit reparses");
            assert_eq!(reparsed, circuit);
            let _ = qcmap_core::DependencyGraph::build(&circuit);
        }
    }
});
