#![no_main]
use clonekit::QubitBasis;
use clonekit_cli::parse::{parse_basis, parse_basis_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(b) = parse_basis(s) {
        // every accepted spec is a genuine basis and its label reads back
        assert!(QubitBasis::custom(*b.unitary()).is_ok(), "{s:?}");
        assert_eq!(parse_basis(&b.label().to_string()).unwrap(), b);
    }
    if let Ok(list) = parse_basis_list(s) {
        assert!(!list.is_empty());
    }
});
