#![no_main]
use clonekit_cli::replay;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(first) = replay(s) {
        // a recomputed document replays to itself
        let doc = serde_json::to_string(&first).unwrap();
        assert_eq!(replay(&doc).unwrap(), first);
    }
});
