#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(device) = qcmap_core::load_device(text) {
            // anything that loads must survive the serialize/load round trip
            let reloaded = qcmap_core::load_device(&device.to_text()).expect("serialized device reloads");
            assert_eq!(reloaded, device);
            // graph queries must not panic on in-range indices
            let n = device.qubit_count();
            for i in 0..n.min(4) {
                for j in 0..n.min(4) {
                    let _ = device.are_coupled(i, j);
                    let _ = device.distance(i, j);
                }
            }
        }
    }
});
