//! Clone fidelities in the correlated picture.
//!
//! Alice holds wire 0 and is measured in the conjugate basis `ψ*`; Bob (wire 1)
//! and Eve (wire 2) are measured in `ψ`. The fidelity of a clone is the
//! probability that it reads `ψ_i` given that Alice read `ψ*_i`, averaged over
//! `i`. For a channel acting on half of `|B_{0,0}⟩` this is the average
//! fidelity over the two basis states sent through the channel.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::bell::QubitBasis;
use crate::cloner::{apply_ng_gate, cerf_state, ng_state, CloningAmplitudes, CloningState, TwoQubitCloneState};
use crate::error::{Error, Result};
use crate::qstate::{partial_trace, product_basis_probabilities, DensityMatrix, StateVector, C64, MIN_PROBABILITY};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Party {
    Bob,
    Eve,
}

impl Party {
    pub fn wire(self) -> usize {
        match self {
            Party::Bob => 1,
            Party::Eve => 2,
        }
    }
}

/// Anything that carries a pure state with Alice on wire 0 and the clones on
/// wires 1 and 2.
pub trait CorrelatedState {
    fn correlated_state(&self) -> &StateVector;
}

impl CorrelatedState for CloningState {
    fn correlated_state(&self) -> &StateVector {
        self.state()
    }
}

impl CorrelatedState for TwoQubitCloneState {
    fn correlated_state(&self) -> &StateVector {
        self.state()
    }
}

impl CorrelatedState for StateVector {
    fn correlated_state(&self) -> &StateVector {
        self
    }
}

fn measurement_bases(basis: &QubitBasis, wires: usize) -> Vec<QubitBasis> {
    let conj = basis.conjugate();
    (0..wires)
        .map(|w| if w == 1 || w == 2 { basis.clone() } else { conj.clone() })
        .collect()
}

fn fidelity_from_probabilities(probs: &[f64], wires: usize, party: Party) -> Result<f64> {
    let clone_shift = wires - 1 - party.wire();
    let alice_shift = wires - 1;
    let mut joint = [[0.0; 2]; 2];
    for (idx, p) in probs.iter().enumerate() {
        joint[(idx >> alice_shift) & 1][(idx >> clone_shift) & 1] += p;
    }
    let mut total = 0.0;
    for (i, row) in joint.iter().enumerate() {
        let marginal = row[0] + row[1];
        if marginal < MIN_PROBABILITY {
            return Err(Error::ImpossibleOutcome { probability: marginal });
        }
        total += row[i] / marginal;
    }
    Ok((total / 2.0).clamp(0.0, 1.0))
}

fn check_wires(wires: usize) -> Result<()> {
    if wires < 3 {
        return Err(Error::InvalidWireSelection(format!(
            "need Alice, Bob and Eve wires, state has {wires}"
        )));
    }
    Ok(())
}

pub fn clone_fidelity<S: CorrelatedState + ?Sized>(state: &S, basis: &QubitBasis, party: Party) -> Result<f64> {
    let psi = state.correlated_state();
    check_wires(psi.wires())?;
    let table = product_basis_probabilities(psi, &measurement_bases(basis, psi.wires()))?;
    fidelity_from_probabilities(table.probabilities(), psi.wires(), party)
}

/// Same quantity for a mixed state of the same layout.
pub fn clone_fidelity_mixed(rho: &DensityMatrix, basis: &QubitBasis, party: Party) -> Result<f64> {
    let wires = rho.wires();
    check_wires(wires)?;
    let bases = measurement_bases(basis, wires);
    let mut w = DMatrix::<C64>::identity(1, 1);
    for b in &bases {
        w = w.kronecker(&b.matrix().adjoint());
    }
    let rotated = &w * rho.entries() * w.adjoint();
    let probs: Vec<f64> = (0..rho.dim()).map(|i| rotated[(i, i)].re.max(0.0)).collect();
    fidelity_from_probabilities(&probs, wires, party)
}

/// Prepare-and-send fidelity of the NG gate: each basis state `ψ_i` is fed to
/// Bob's input with Eve's blank `|0⟩`, the chosen clone is traced out and
/// compared with `ψ_i`, and the two results are averaged.
pub fn ng_prepare_and_send_fidelity(alpha: f64, basis: &QubitBasis, party: Party) -> Result<f64> {
    let mut total = 0.0;
    for i in 0..2 {
        let input = basis.ket(i);
        let out = apply_ng_gate(&input, alpha)?;
        let rho = DensityMatrix::from_pure(&out)?;
        let clone = partial_trace(&rho, &[party.wire() - 1], 2)?;
        total += clone.expectation(&input)?;
    }
    Ok(total / 2.0)
}

/// A cloner that reports can be computed for.
#[derive(Clone, Debug, PartialEq)]
pub enum ClonerSpec {
    Cerf(CloningAmplitudes),
    Ng(f64),
}

impl ClonerSpec {
    pub fn fidelity(&self, basis: &QubitBasis, party: Party) -> Result<f64> {
        match self {
            ClonerSpec::Cerf(a) => clone_fidelity(&cerf_state(a, &QubitBasis::z()), basis, party),
            ClonerSpec::Ng(alpha) => clone_fidelity(&ng_state(*alpha)?, basis, party),
        }
    }

    pub fn fidelities(&self, basis: &QubitBasis) -> Result<CloneFidelities> {
        Ok(CloneFidelities {
            bob: self.fidelity(basis, Party::Bob)?,
            eve: self.fidelity(basis, Party::Eve)?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CloneFidelities {
    pub bob: f64,
    pub eve: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FidelityReport {
    pub per_basis: BTreeMap<String, CloneFidelities>,
    /// Extremes of Bob's fidelity over the sampled equator.
    pub equator_min: Option<f64>,
    pub equator_max: Option<f64>,
    /// Extremes of Eve's fidelity over the sampled equator.
    pub eve_equator_min: Option<f64>,
    pub eve_equator_max: Option<f64>,
    /// `1 − F` for each entry of `per_basis`.
    pub error_rates: BTreeMap<String, CloneFidelities>,
}

/// Fidelities in each listed basis plus the extremes over `equator_samples`
/// equatorial bases `φ_k = 2πk/n`.
pub fn fidelity_report(spec: &ClonerSpec, bases: &[QubitBasis], equator_samples: usize) -> Result<FidelityReport> {
    let mut per_basis = BTreeMap::new();
    let mut error_rates = BTreeMap::new();
    for b in bases {
        let f = spec.fidelities(b)?;
        let label = b.label().to_string();
        error_rates.insert(
            label.clone(),
            CloneFidelities {
                bob: 1.0 - f.bob,
                eve: 1.0 - f.eve,
            },
        );
        per_basis.insert(label, f);
    }
    let equator: Vec<CloneFidelities> = (0..equator_samples)
        .into_par_iter()
        .map(|k| {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / equator_samples as f64;
            spec.fidelities(&QubitBasis::equatorial(phi))
        })
        .collect::<Result<_>>()?;
    let extreme = |pick: fn(&CloneFidelities) -> f64, max: bool| -> Option<f64> {
        equator
            .iter()
            .map(pick)
            .reduce(|a, b| if max { a.max(b) } else { a.min(b) })
    };
    Ok(FidelityReport {
        per_basis,
        equator_min: extreme(|f| f.bob, false),
        equator_max: extreme(|f| f.bob, true),
        eve_equator_min: extreme(|f| f.eve, false),
        eve_equator_max: extreme(|f| f.eve, true),
        error_rates,
    })
}
