//! Uniform mixture of three phase-covariant cloners, one per coordinate
//! equator, as an attack on the six-state protocol.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::analysis::fidelity::{clone_fidelity_mixed, Party};
use crate::bell::QubitBasis;
use crate::cloner::{cerf_state, optimal_fggnp_amplitudes};
use crate::error::Result;
use crate::qstate::DensityMatrix;

/// Optimal symmetric universal cloner.
pub const UNIVERSAL_FIDELITY: f64 = 5.0 / 6.0;
/// Optimal six-state attack fidelity, quoted for comparison.
pub const SIX_STATE_THRESHOLD: f64 = 0.8436;

/// Samples closer than this count as the same fidelity.
const UNIFORMITY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AttackComponent {
    pub weight: f64,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DirectionSample {
    pub label: String,
    pub theta: f64,
    pub phi: f64,
    pub bob: f64,
    pub eve: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AttackReport {
    pub components: Vec<AttackComponent>,
    /// Bob's fidelity in each of the X, Y, Z bases (Eve's is identical).
    pub fidelity_by_basis: BTreeMap<String, f64>,
    /// Whether every sampled direction gives the same fidelity.
    pub bloch_uniform: bool,
    pub off_axis: Vec<DirectionSample>,
    pub universal_fidelity: f64,
    pub threshold_fidelity: f64,
    pub below_universal: bool,
    pub below_threshold: bool,
}

/// Closed form `(2/3)(1/2 + 1/√8) + (1/3)(3/4)` of the axis fidelity.
pub fn six_state_axis_fidelity() -> f64 {
    2.0 / 3.0 * (0.5 + 1.0 / 8f64.sqrt()) + 0.75 / 3.0
}

/// Off-axis directions probed for isotropy.
pub fn off_axis_directions() -> Vec<(String, f64, f64)> {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
    vec![
        ("between z and x".to_string(), FRAC_PI_4, 0.0),
        ("between x and y".to_string(), FRAC_PI_2, FRAC_PI_4),
        ("diagonal (1,1,1)".to_string(), (1.0 / 3f64.sqrt()).acos(), FRAC_PI_4),
        ("generic".to_string(), 1.0, 2.3),
    ]
}

pub fn six_state_mixture_report() -> Result<AttackReport> {
    let a = optimal_fggnp_amplitudes();
    let expansions = [
        ("z", QubitBasis::z(), "equator orthogonal to z"),
        ("x", QubitBasis::x(), "equator orthogonal to x"),
        ("y", QubitBasis::y(), "equator orthogonal to y"),
    ];
    let weight = 1.0 / 3.0;
    let mut rhos = Vec::with_capacity(3);
    let mut components = Vec::with_capacity(3);
    for (name, basis, circle) in &expansions {
        rhos.push(DensityMatrix::from_pure(cerf_state(&a, basis).state())?);
        components.push(AttackComponent {
            weight,
            description: format!("optimal phase-covariant cloner expanded in {name}, {circle}"),
        });
    }
    let parts: Vec<(f64, &DensityMatrix)> = rhos.iter().map(|r| (weight, r)).collect();
    let rho = DensityMatrix::mixture(&parts)?;

    let mut fidelity_by_basis = BTreeMap::new();
    let mut all = Vec::new();
    for (name, basis, _) in &expansions {
        let bob = clone_fidelity_mixed(&rho, basis, Party::Bob)?;
        let eve = clone_fidelity_mixed(&rho, basis, Party::Eve)?;
        all.extend([bob, eve]);
        fidelity_by_basis.insert(name.to_string(), bob);
    }
    let mut off_axis = Vec::new();
    for (label, theta, phi) in off_axis_directions() {
        let b = QubitBasis::bloch(theta, phi);
        let bob = clone_fidelity_mixed(&rho, &b, Party::Bob)?;
        let eve = clone_fidelity_mixed(&rho, &b, Party::Eve)?;
        all.extend([bob, eve]);
        off_axis.push(DirectionSample {
            label,
            theta,
            phi,
            bob,
            eve,
        });
    }
    let lo = all.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = all.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let worst_axis = fidelity_by_basis.values().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(AttackReport {
        components,
        fidelity_by_basis,
        bloch_uniform: hi - lo <= UNIFORMITY_TOL,
        off_axis,
        universal_fidelity: UNIVERSAL_FIDELITY,
        threshold_fidelity: SIX_STATE_THRESHOLD,
        below_universal: worst_axis < UNIVERSAL_FIDELITY,
        below_threshold: worst_axis < SIX_STATE_THRESHOLD,
    })
}
