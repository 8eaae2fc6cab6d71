#![no_main]
use clonekit_cli::parse::parse_amplitudes;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(a) = parse_amplitudes(s) {
        let flat = a.flat();
        assert!(flat.iter().all(|v| v.is_finite() && *v >= 0.0), "{s:?}");
        let norm_sqr: f64 = flat.iter().map(|v| v * v).sum();
        assert!((norm_sqr - 1.0).abs() < 1e-12, "{s:?} -> {norm_sqr}");
    }
});
