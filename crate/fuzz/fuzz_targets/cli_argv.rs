#![no_main]
use clonekit_cli::report::Envelope;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let argv = std::iter::once("clonekit").chain(s.split_whitespace());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = clonekit_cli::run(argv, &mut out, &mut err);
    assert!(matches!(code, 0..=2), "exit {code} for {s:?}");
    // help and version text are the only non-JSON successes
    if code == 0 && out.first() == Some(&b'{') {
        serde_json::from_slice::<Envelope>(&out).expect("success writes an envelope");
    }
    if code != 0 {
        assert!(out.is_empty() && !err.is_empty());
    }
});
