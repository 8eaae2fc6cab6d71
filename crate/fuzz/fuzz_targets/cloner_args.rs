#![no_main]
use clonekit_cli::parse::{resolve_cloner, Cloner, ClonerArgs};
use libfuzzer_sys::fuzz_target;

// cloner flags as decoded from a report's `inputs`
fuzz_target!(|data: &[u8]| {
    let Ok(args) = serde_json::from_slice::<ClonerArgs>(data) else {
        return;
    };
    match resolve_cloner(&args) {
        Ok(Cloner::Cerf(a)) => {
            let norm_sqr: f64 = a.flat().iter().map(|v| v * v).sum();
            assert!((norm_sqr - 1.0).abs() < 1e-12);
        }
        Ok(Cloner::Ng(alpha)) => assert!((0.0..=std::f64::consts::PI).contains(&alpha)),
        Err(_) => {}
    }
});
