//! Symmetric optimum of the phase-covariant family.

use serde::Serialize;

use crate::analysis::fidelity::{clone_fidelity, Party};
use crate::bell::QubitBasis;
use crate::cloner::{cerf_state, ng_state, CloningAmplitudes};
use crate::error::{Error, Result};
use crate::search::{bisect, golden_section_min};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseCovariantOptimum {
    pub v: f64,
    pub y: f64,
    pub x: f64,
    pub fidelity: f64,
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NgOptimum {
    pub alpha: f64,
    pub fidelity: f64,
    pub iterations: usize,
}

fn check_tolerance(tolerance: f64) -> Result<()> {
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::OutOfRange(format!("tolerance must be positive, got {tolerance}")));
    }
    Ok(())
}

/// Equatorial fidelities of `(v, y; x, x)` with `v = √(1 − 2x² − y²)`.
fn equatorial_pair(x: f64, y: f64) -> Result<(f64, f64, f64)> {
    let v = (1.0 - 2.0 * x * x - y * y).max(0.0).sqrt();
    let a = CloningAmplitudes::from_unnormalized([[v, y], [x, x]])?;
    let s = cerf_state(&a, &QubitBasis::z());
    let b = QubitBasis::x();
    Ok((v, clone_fidelity(&s, &b, Party::Bob)?, clone_fidelity(&s, &b, Party::Eve)?))
}

/// For fixed `x`, the `y` at which both clones are equally good.
fn symmetric_y(x: f64) -> Result<f64> {
    let y_max = (1.0 - 2.0 * x * x).max(0.0).sqrt();
    bisect(
        |y| equatorial_pair(x, y).map(|(_, bob, eve)| bob - eve).unwrap_or(f64::NAN),
        0.0,
        y_max,
        1e-15,
    )
}

/// Maximises Bob's equatorial fidelity over `(v, y; x, x)` subject to
/// `F_bob = F_eve`. Golden-section over `x ∈ [0, 1/√6]`; at each `x` the
/// symmetry constraint fixes `y` by bisection.
pub fn optimize_symmetric_phase_covariant(tolerance: f64) -> Result<PhaseCovariantOptimum> {
    check_tolerance(tolerance)?;
    let objective = |x: f64| -> f64 {
        symmetric_y(x)
            .and_then(|y| equatorial_pair(x, y))
            .map(|(_, bob, _)| -bob)
            .unwrap_or(f64::INFINITY)
    };
    let (x, iterations) = golden_section_min(objective, 0.0, 1.0 / 6f64.sqrt(), tolerance)?;
    let y = symmetric_y(x)?;
    let (v, bob, _) = equatorial_pair(x, y)?;
    Ok(PhaseCovariantOptimum {
        v,
        y,
        x,
        fidelity: bob,
        iterations,
    })
}

/// Maximises `min(F_bob, F_eve)` on the equator over the NG angle.
pub fn optimize_ng(tolerance: f64) -> Result<NgOptimum> {
    check_tolerance(tolerance)?;
    let b = QubitBasis::x();
    let worst_clone = |alpha: f64| -> Result<f64> {
        let s = ng_state(alpha)?;
        Ok(clone_fidelity(&s, &b, Party::Bob)?.min(clone_fidelity(&s, &b, Party::Eve)?))
    };
    let (alpha, iterations) = golden_section_min(
        |alpha| worst_clone(alpha).map(|f| -f).unwrap_or(f64::INFINITY),
        0.0,
        std::f64::consts::FRAC_PI_2,
        tolerance,
    )?;
    Ok(NgOptimum {
        alpha,
        fidelity: worst_clone(alpha)?,
        iterations,
    })
}
