//! Strict and FAPP covariance of Cerf-form cloners.
//!
//! The physical cloner is `S = cerf_state(a, Z)`. It is strictly covariant in
//! the pair `(b1, b2)` when it has the diagonal Bell form in `b1` with
//! coefficients `c` and the very same coefficients reproduce `S` in `b2`. When
//! `b1 = Z` the coefficients are `a` itself and the test compares
//! `cerf_state(a, b1)` with `cerf_state(a, b2)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::bell::{bell_coefficient_matrix, bell_overlap_table, signed_permutation_to_z, QubitBasis};
use crate::cloner::{cerf_state, superpose_bell_products, CloningAmplitudes};
use crate::error::{Error, Result};
use crate::qstate::{product_basis_probabilities, StateVector, C64, NUMERIC_TOL};

/// Overlaps at or below this magnitude do not link two amplitudes.
pub const ZERO_OVERLAP_TOL: f64 = 1e-10;
/// Linked amplitudes must agree to this tolerance.
pub const AMPLITUDE_EQUALITY_TOL: f64 = 1e-12;

pub type LabelPair = ((u8, u8), (u8, u8));

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CovarianceVerdict {
    pub strict: bool,
    pub fapp: bool,
    /// Linked labels whose amplitudes differ, in Z labels when `basis1`'s Bell
    /// family is a phased permutation of Z's and in `basis1` labels otherwise.
    pub violated_pairs: Vec<LabelPair>,
    pub max_residual: f64,
}

fn label(i: usize) -> (u8, u8) {
    ((i >> 1) as u8, (i & 1) as u8)
}

/// Bell form of the cloner in `basis`: the diagonal coefficients and the
/// largest off-diagonal magnitude.
fn bell_form(state: &StateVector, basis: &QubitBasis) -> ([C64; 4], f64) {
    let m = bell_coefficient_matrix(state, basis).expect("cloning states have 16 amplitudes");
    let diag = std::array::from_fn(|i| m[(i, i)]);
    let mut off: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                off = off.max(m[(i, j)].norm());
            }
        }
    }
    (diag, off)
}

/// Decides strict covariance from the overlap table: every pair of labels with
/// a nonzero overlap must carry equal amplitudes.
pub fn strict_covariance_by_theorem(
    a: &CloningAmplitudes,
    basis1: &QubitBasis,
    basis2: &QubitBasis,
) -> CovarianceVerdict {
    let s = cerf_state(a, &QubitBasis::z());
    let fapp = fapp_covariance(a, basis1, basis2);
    let (c, off) = bell_form(s.state(), basis1);
    if off > ZERO_OVERLAP_TOL {
        return CovarianceVerdict {
            strict: false,
            fapp,
            violated_pairs: Vec::new(),
            max_residual: off,
        };
    }
    let table = bell_overlap_table(basis1, basis2);
    let relabel = signed_permutation_to_z(basis1).unwrap_or([0, 1, 2, 3]);
    let mut violated = Vec::new();
    let mut worst: f64 = 0.0;
    for p in 0..4 {
        for q in 0..4 {
            if table[(p, q)].norm() <= ZERO_OVERLAP_TOL {
                continue;
            }
            let gap = (c[p] - c[q]).norm();
            worst = worst.max(gap);
            if gap > AMPLITUDE_EQUALITY_TOL {
                let (l1, l2) = (label(relabel[p]), label(relabel[q]));
                violated.push(if l1 <= l2 { (l1, l2) } else { (l2, l1) });
            }
        }
    }
    violated.sort_unstable();
    violated.dedup();
    CovarianceVerdict {
        strict: violated.is_empty(),
        fapp,
        violated_pairs: violated,
        max_residual: worst,
    }
}

/// Largest componentwise deviation between the cloner and its Bell-form
/// reconstructions in `basis1` and `basis2`.
pub fn strict_covariance_residual(a: &CloningAmplitudes, basis1: &QubitBasis, basis2: &QubitBasis) -> f64 {
    let s = cerf_state(a, &QubitBasis::z());
    let (c, _) = bell_form(s.state(), basis1);
    [basis1, basis2]
        .iter()
        .map(|b| {
            superpose_bell_products(&c, b)
                .max_abs_diff(s.state())
                .expect("same dimension")
        })
        .fold(0.0, f64::max)
}

/// Componentwise state equality, no phase freedom.
pub fn strict_covariance_direct(a: &CloningAmplitudes, basis1: &QubitBasis, basis2: &QubitBasis) -> bool {
    strict_covariance_residual(a, basis1, basis2) <= NUMERIC_TOL
}

/// Diagnostic only: equality of the two reconstructions up to a global phase.
pub fn strict_covariance_up_to_phase(a: &CloningAmplitudes, basis1: &QubitBasis, basis2: &QubitBasis) -> bool {
    let s = cerf_state(a, &QubitBasis::z());
    let (c, _) = bell_form(s.state(), basis1);
    let r1 = superpose_bell_products(&c, basis1);
    let r2 = superpose_bell_products(&c, basis2);
    let overlap = r1.inner(&r2).expect("same dimension").norm();
    let scale = (r1.norm_sqr() * r2.norm_sqr()).sqrt();
    scale > 0.0 && (scale - overlap).abs() <= NUMERIC_TOL
}

/// Direct strict-covariance check between X and every `equatorial(2πk/n)`.
/// Returns whether all samples pass and the worst residual.
pub fn equator_sweep(a: &CloningAmplitudes, phi_samples: usize) -> Result<(bool, f64)> {
    if phi_samples < 2 {
        return Err(Error::OutOfRange(format!(
            "need at least 2 equator samples, got {phi_samples}"
        )));
    }
    let x = QubitBasis::x();
    let residuals: Vec<f64> = (0..phi_samples)
        .into_par_iter()
        .map(|k| {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / phi_samples as f64;
            strict_covariance_residual(a, &x, &QubitBasis::equatorial(phi))
        })
        .collect();
    let worst = residuals.iter().copied().fold(0.0, f64::max);
    Ok((residuals.iter().all(|&r| r <= NUMERIC_TOL), worst))
}

/// Local measurement bases matched to the correlated picture: Alice and the
/// ancilla in the conjugate basis, the two clones in the basis itself.
pub fn adapted_bases(b: &QubitBasis) -> [QubitBasis; 4] {
    let c = b.conjugate();
    [c.clone(), b.clone(), b.clone(), c]
}

/// Largest difference between the detector statistics of the cloner in the
/// two adapted product bases.
pub fn fapp_residual(a: &CloningAmplitudes, basis1: &QubitBasis, basis2: &QubitBasis) -> f64 {
    let s = cerf_state(a, &QubitBasis::z());
    let p1 = product_basis_probabilities(s.state(), &adapted_bases(basis1)).expect("four wires");
    let p2 = product_basis_probabilities(s.state(), &adapted_bases(basis2)).expect("four wires");
    p1.probabilities()
        .iter()
        .zip(p2.probabilities())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn fapp_covariance(a: &CloningAmplitudes, basis1: &QubitBasis, basis2: &QubitBasis) -> bool {
    fapp_residual(a, basis1, basis2) <= NUMERIC_TOL
}
