//! Reduction of a three-qubit Cerf cloner to an ancilla-labelled mixture of
//! two ancilla-free cloners:
//!
//! `|Ψ⟩ = √p |Ψ^U⟩|0̃⟩_M + √(1−p) |Ψ^V⟩|1̃⟩_M`, with
//! `|Ψ^U⟩ = (1_A ⊗ U_{BE}) |B_{0,0}⟩_{AB}|0⟩_E`.

use nalgebra::{DVector, Matrix2};
use rayon::prelude::*;
use serde::Serialize;

use crate::bell::{bell_state, BellLabel, QubitBasis};
use crate::cloner::{cerf_state, CloningAmplitudes, CloningState};
use crate::covariance::adapted_bases;
use crate::error::{Error, Result};
use crate::search::golden_section_min;
use crate::qstate::{
    apply_on_wires, complete_to_unitary, product_basis_probabilities, tensor, unitarity_deviation, Operator,
    StateVector, C64, MIN_PROBABILITY, NUMERIC_TOL,
};

/// Resolution of the ancilla-basis grid in [`necessity_probe`].
pub const PROBE_GRID: usize = 64;
/// Residual the probe is expected to exceed for cloners outside every
/// reducible surface. Heuristic.
pub const PROBE_FLOOR: f64 = 1e-3;
/// Relative tolerance when comparing the two ancilla-statistics ratios.
pub const RATIO_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Conditions {
    /// `a00 a01 = a10 a11`
    pub cond_i: bool,
    /// `a00 a10 = a01 a11`
    pub cond_ii: bool,
    /// `a00 a11 = a01 a10`
    pub cond_iii: bool,
}

impl Conditions {
    pub fn any(&self) -> bool {
        self.cond_i || self.cond_ii || self.cond_iii
    }
}

/// Signed product differences of conditions i, ii, iii.
pub fn condition_gaps(a: &CloningAmplitudes) -> [f64; 3] {
    let [a00, a01, a10, a11] = a.flat();
    [a00 * a01 - a10 * a11, a00 * a10 - a01 * a11, a00 * a11 - a01 * a10]
}

pub fn check_conditions(a: &CloningAmplitudes) -> Conditions {
    check_conditions_with_tol(a, NUMERIC_TOL)
}

pub fn check_conditions_with_tol(a: &CloningAmplitudes, tol: f64) -> Conditions {
    let [i, ii, iii] = condition_gaps(a).map(|g| g.abs() <= tol);
    Conditions {
        cond_i: i,
        cond_ii: ii,
        cond_iii: iii,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducibilityReport {
    pub cond_i: bool,
    pub cond_ii: bool,
    pub cond_iii: bool,
    pub reducible: bool,
    pub ancilla_basis: Option<QubitBasis>,
    pub p: Option<f64>,
    pub u: Option<Operator>,
    pub v_op: Option<Operator>,
    /// Reconstruction residual; absent when no decomposition was built.
    pub residual: Option<f64>,
}

/// Ancilla basis paired with each condition: Z for i, X for ii, Y for iii.
pub fn ancilla_basis_for(conditions: &Conditions) -> Option<QubitBasis> {
    if conditions.cond_i {
        Some(QubitBasis::z())
    } else if conditions.cond_ii {
        Some(QubitBasis::x())
    } else if conditions.cond_iii {
        Some(QubitBasis::y())
    } else {
        None
    }
}

pub fn decompose(a: &CloningAmplitudes) -> Result<ReducibilityReport> {
    decompose_with_tol(a, NUMERIC_TOL)
}

/// Builds U and V when one of the conditions holds at `tol`.
pub fn decompose_with_tol(a: &CloningAmplitudes, tol: f64) -> Result<ReducibilityReport> {
    let conditions = check_conditions_with_tol(a, tol);
    let mut report = ReducibilityReport {
        cond_i: conditions.cond_i,
        cond_ii: conditions.cond_ii,
        cond_iii: conditions.cond_iii,
        reducible: conditions.any(),
        ancilla_basis: None,
        p: None,
        u: None,
        v_op: None,
        residual: None,
    };
    let Some(basis) = ancilla_basis_for(&conditions) else {
        return Ok(report);
    };
    let psi = cerf_state(a, &QubitBasis::z());
    let u = branch_unitary(psi.state(), &basis, 0)?;
    let v = branch_unitary(psi.state(), &basis, 1)?;
    report.ancilla_basis = Some(basis);
    report.p = Some(0.5);
    report.u = Some(u);
    report.v_op = Some(v);
    report.residual = Some(verify_decomposition(a, &report)?);
    Ok(report)
}

/// Projection `⟨i_A, t̃_M|Ψ⟩` as a vector on `B, E`.
fn branch_column(psi: &StateVector, ancilla: &QubitBasis, t: usize, alice: usize) -> DVector<C64> {
    let k = ancilla.ket_amplitudes(t);
    let amps = psi.amplitudes();
    DVector::from_fn(4, |be, _| {
        let base = 8 * alice + 2 * be;
        k[0].conj() * amps[base] + k[1].conj() * amps[base + 1]
    })
}

/// Gate of ancilla branch `t`: the columns `|00⟩` and `|10⟩` are the
/// renormalized Alice-split projections of the branch, the rest is the
/// deterministic completion.
fn branch_unitary(psi: &StateVector, ancilla: &QubitBasis, t: usize) -> Result<Operator> {
    let mut cols = Vec::with_capacity(2);
    for alice in 0..2 {
        let c = branch_column(psi, ancilla, t, alice);
        let norm = c.norm();
        if norm * norm < MIN_PROBABILITY {
            return Err(Error::NotReducible);
        }
        cols.push(c / C64::new(norm, 0.0));
    }
    // near a surface (loose tol) the columns are only nearly orthogonal
    let overlap = cols[0].dotc(&cols[1]);
    let second = &cols[1] - &cols[0] * overlap;
    let norm = second.norm();
    if norm < 1e-6 {
        return Err(Error::NotReducible);
    }
    cols[1] = second / C64::new(norm, 0.0);
    let w = complete_to_unitary(&cols, 4).map_err(|_| Error::NotReducible)?;
    Operator::from_columns(&[w.column(0), w.column(2), w.column(1), w.column(3)])
}

/// `(1_A ⊗ gate)(|B_{0,0}⟩_{AB}|0⟩_E)`.
pub fn branch_state(gate: &Operator) -> Result<StateVector> {
    let b00 = bell_state(BellLabel::plain(0, 0)?, &QubitBasis::z())?;
    let start = tensor(&b00, &StateVector::basis_state(1, 0)?)?;
    apply_on_wires(&start, gate, &[1, 2])
}

/// Max componentwise deviation of the reported mixture from the cloner.
pub fn verify_decomposition(a: &CloningAmplitudes, report: &ReducibilityReport) -> Result<f64> {
    let (Some(basis), Some(p), Some(u), Some(v)) = (&report.ancilla_basis, report.p, &report.u, &report.v_op)
    else {
        return Err(Error::NotReducible);
    };
    for op in [u, v] {
        if op.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: op.dim(),
            });
        }
        let deviation = unitarity_deviation(op);
        if deviation > NUMERIC_TOL {
            return Err(Error::NotUnitary { deviation });
        }
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(format!("weight p = {p}")));
    }
    let left = tensor(&branch_state(u)?, &basis.ket(0))?.scaled(C64::new(p.sqrt(), 0.0));
    let right = tensor(&branch_state(v)?, &basis.ket(1))?.scaled(C64::new((1.0 - p).sqrt(), 0.0));
    left.add(&right)?.max_abs_diff(cerf_state(a, &QubitBasis::z()).state())
}

/// `P(s_E, s_M) / P(s_E, s_M')` style ratio with its degenerate cases kept.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ratio {
    Finite(f64),
    Infinite,
    /// 0/0
    Indeterminate,
}

impl Ratio {
    fn of(num: f64, den: f64) -> Ratio {
        match (num < MIN_PROBABILITY, den < MIN_PROBABILITY) {
            (true, true) => Ratio::Indeterminate,
            (false, true) => Ratio::Infinite,
            _ => Ratio::Finite(num / den),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AncillaStatistics {
    pub basis: String,
    pub alice_outcome: u8,
    /// Probability of Alice's outcome.
    pub alice_probability: f64,
    /// `table[s_E][s_M]`, conditioned on Alice's outcome (sums to 1).
    pub table: [[f64; 2]; 2],
    /// `P(+,+) / P(+,−)`
    pub ratio_equal: Ratio,
    /// `P(−,−) / P(−,+)`
    pub ratio_flipped: Ratio,
}

/// Measures Alice and the ancilla in the conjugate of `basis` and the clones in
/// `basis`, then conditions on Alice's outcome.
pub fn ancilla_statistics(state: &CloningState, basis: &QubitBasis, alice_outcome: u8) -> Result<AncillaStatistics> {
    if alice_outcome > 1 {
        return Err(Error::OutOfRange(format!("alice outcome {alice_outcome}")));
    }
    let table = product_basis_probabilities(state.state(), &adapted_bases(basis))?;
    let s = alice_outcome as usize;
    let mut joint = [[0.0; 2]; 2];
    for (e, row) in joint.iter_mut().enumerate() {
        for (m, slot) in row.iter_mut().enumerate() {
            *slot = (0..2).map(|b| table.get(&[s, b, e, m])).sum();
        }
    }
    let alice_probability: f64 = joint.iter().flatten().sum();
    if alice_probability < MIN_PROBABILITY {
        return Err(Error::ImpossibleOutcome {
            probability: alice_probability,
        });
    }
    let cond = joint.map(|row| row.map(|p| p / alice_probability));
    Ok(AncillaStatistics {
        basis: basis.label().to_string(),
        alice_outcome,
        alice_probability,
        table: cond,
        ratio_equal: Ratio::of(cond[0][0], cond[0][1]),
        ratio_flipped: Ratio::of(cond[1][1], cond[1][0]),
    })
}

/// Whether the ancilla can be ignored when Eve measures in `basis`: the two
/// ratios agree (relative tolerance [`RATIO_TOL`]).
pub fn drop_ancilla_test(a: &CloningAmplitudes, basis: &QubitBasis) -> Result<bool> {
    let stats = ancilla_statistics(&cerf_state(a, &QubitBasis::z()), basis, 0)?;
    Ok(ratios_agree(&stats))
}

fn ratios_agree(stats: &AncillaStatistics) -> bool {
    match (stats.ratio_equal, stats.ratio_flipped) {
        (Ratio::Finite(r1), Ratio::Finite(r2)) => (r1 - r2).abs() <= RATIO_TOL * r1.abs().max(r2.abs()).max(1e-300),
        (Ratio::Infinite, Ratio::Infinite) => true,
        (Ratio::Infinite, Ratio::Finite(_)) | (Ratio::Finite(_), Ratio::Infinite) => false,
        _ => {
            let t = stats.table;
            let (l, r) = (t[0][0] * t[1][0], t[1][1] * t[0][1]);
            (l - r).abs() <= RATIO_TOL * l.max(r) || (l - r).abs() < MIN_PROBABILITY
        }
    }
}

/// Best reduction residual found over ancilla bases.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProbeResult {
    pub residual: f64,
    pub theta: f64,
    pub phi: f64,
}

/// Lower bound on the distance from the cloner to any two-branch reduction
/// with ancilla basis `(θ, φ)`. For each branch the Alice-split matrix
/// `C = [⟨0_A|χ⟩, ⟨1_A|χ⟩]` must be a multiple of an isometry; the Frobenius
/// distance to the nearest one is `(σ1 − σ2)²/2`.
pub fn probe_residual(psi: &StateVector, theta: f64, phi: f64) -> f64 {
    let basis = QubitBasis::bloch(theta, phi);
    let mut total = 0.0;
    for t in 0..2 {
        let c0 = branch_column(psi, &basis, t, 0);
        let c1 = branch_column(psi, &basis, t, 1);
        let g = Matrix2::new(c0.dotc(&c0), c0.dotc(&c1), c1.dotc(&c0), c1.dotc(&c1));
        let half_tr = 0.5 * (g[(0, 0)].re + g[(1, 1)].re);
        let det = (g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)]).re;
        let disc = (half_tr * half_tr - det).max(0.0).sqrt();
        let s1 = (half_tr + disc).max(0.0).sqrt();
        let s2 = (half_tr - disc).max(0.0).sqrt();
        total += (s1 - s2).powi(2) / 2.0;
    }
    total.sqrt()
}

pub fn necessity_probe(a: &CloningAmplitudes) -> ProbeResult {
    necessity_probe_with_grid(a, PROBE_GRID)
}

/// Grid search over `θ = πk/n` (k = 0..=n), `φ = 2πl/n` (l < n), then local
/// golden-section refinement around the best grid point.
pub fn necessity_probe_with_grid(a: &CloningAmplitudes, grid: usize) -> ProbeResult {
    use std::f64::consts::PI;
    let grid = grid.max(2);
    let psi = cerf_state(a, &QubitBasis::z());
    let psi = psi.state();
    let rows: Vec<ProbeResult> = (0..=grid)
        .into_par_iter()
        .map(|k| {
            let theta = PI * k as f64 / grid as f64;
            (0..grid)
                .map(|l| {
                    let phi = 2.0 * PI * l as f64 / grid as f64;
                    ProbeResult {
                        residual: probe_residual(psi, theta, phi),
                        theta,
                        phi,
                    }
                })
                .fold(None, pick_smaller)
                .expect("grid has columns")
        })
        .collect();
    let mut best = rows.into_iter().fold(None, pick_smaller).expect("grid has rows");
    let (h_theta, h_phi) = (PI / grid as f64, 2.0 * PI / grid as f64);
    for _ in 0..4 {
        let phi = best.phi;
        let theta = refine(|t| probe_residual(psi, t, phi), best.theta, h_theta);
        let theta_val = probe_residual(psi, theta, phi);
        if theta_val < best.residual {
            best = ProbeResult { residual: theta_val, theta, phi };
        }
        let theta = best.theta;
        let phi = refine(|p| probe_residual(psi, theta, p), best.phi, h_phi);
        let phi_val = probe_residual(psi, theta, phi);
        if phi_val < best.residual {
            best = ProbeResult { residual: phi_val, theta, phi };
        }
    }
    best
}

fn refine(f: impl Fn(f64) -> f64, centre: f64, half_width: f64) -> f64 {
    golden_section_min(f, centre - half_width, centre + half_width, 1e-10)
        .map(|(arg, _)| arg)
        .unwrap_or(centre)
}

fn pick_smaller(acc: Option<ProbeResult>, r: ProbeResult) -> Option<ProbeResult> {
    match acc {
        Some(b) if b.residual <= r.residual => Some(b),
        _ => Some(r),
    }
}

/// Amplitude matrix of the cloner read back in `basis`, in magnitudes. Used to
/// relate the drop test in a basis to the conditions in that basis.
pub fn reexpanded_magnitudes(a: &CloningAmplitudes, basis: &QubitBasis) -> Result<[[f64; 2]; 2]> {
    let c = crate::bell::bell_coefficients(cerf_state(a, &QubitBasis::z()).state(), basis)?;
    Ok([[c[(0, 0)].norm(), c[(0, 1)].norm()], [c[(1, 0)].norm(), c[(1, 1)].norm()]])
}
