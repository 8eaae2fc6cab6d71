//! Construction and analysis of 1→2 qubit cloning machines.
//!
//! States live on small registers of qubits with the leftmost wire as the most
//! significant index bit. Three-qubit cloners act on the wires `A, B, E, M`
//! (Alice's reference, Bob's clone, Eve's clone, the machine ancilla).

pub mod analysis;
pub mod bell;
pub mod cloner;
pub mod covariance;
pub mod error;
pub mod qstate;
pub mod reducibility;
pub mod search;

pub use error::{Error, Result};
pub use bell::{
    bell_coefficients, bell_overlap_table, bell_state, conjugate_basis, generalized_bell, BasisLabel, BellLabel,
    BellSide, QubitBasis,
};
pub use cloner::{
    apply_ng_gate, cerf_state, fggnp_amplitudes, ng_angle_from_fggnp, ng_flipped_state, ng_state,
    universal_amplitudes, CloningAmplitudes, CloningState, TwoQubitCloneState, SYMMETRIC_UNIVERSAL_X,
};
pub use covariance::{
    equator_sweep, fapp_covariance, strict_covariance_by_theorem, strict_covariance_direct, CovarianceVerdict,
};
pub use qstate::{
    complete_to_unitary, equal_up_to_global_phase, is_unitary, partial_trace, product_basis_probabilities,
    project_wire, tensor, DensityMatrix, Operator, StateVector, C64,
};
pub use reducibility::{
    ancilla_statistics, check_conditions, decompose, drop_ancilla_test, necessity_probe, verify_decomposition,
    AncillaStatistics, ReducibilityReport,
};
