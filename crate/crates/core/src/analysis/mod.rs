//! Fidelities, optimisation over the phase-covariant family and the six-state
//! mixture attack.

pub mod attack;
pub mod fidelity;
pub mod optimize;

pub use attack::{six_state_mixture_report, AttackComponent, AttackReport, DirectionSample};
pub use fidelity::{
    clone_fidelity, clone_fidelity_mixed, fidelity_report, ng_prepare_and_send_fidelity, CloneFidelities,
    ClonerSpec, CorrelatedState, FidelityReport, Party,
};
pub use optimize::{optimize_ng, optimize_symmetric_phase_covariant, NgOptimum, PhaseCovariantOptimum};
