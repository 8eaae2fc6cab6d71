//! JSON shapes emitted by the CLI. Complex numbers serialize as `[re, im]`.

use std::collections::BTreeMap;

use clonekit::reducibility::{ProbeResult, ReducibilityReport};
use clonekit::{Operator, C64};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Top-level document written by every subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub residuals: BTreeMap<String, f64>,
    pub version: String,
}

pub fn matrix_rows(op: &Operator) -> Vec<Vec<C64>> {
    let m = op.matrix();
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BellStateEntry {
    pub m: u8,
    pub n: u8,
    pub index: usize,
    pub amplitudes: Vec<C64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BellResult {
    pub basis: String,
    pub side: String,
    pub states: Vec<BellStateEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub against: Option<String>,
    /// `table[i][j] = ⟨B^{basis}_i | B^{against}_j⟩`
    #[serde(skip_serializing_if = "Option::is_none")]
    pub overlap_table: Option<Vec<Vec<C64>>>,
    pub signed_permutation_to_z: Option<[usize; 4]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquatorSweep {
    pub samples: usize,
    pub all_strict: bool,
    pub worst_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub bases: [String; 2],
    /// Verdict from the overlap-table theorem.
    pub strict: bool,
    pub fapp: bool,
    pub violated_pairs: Vec<((u8, u8), (u8, u8))>,
    /// Verdict from comparing the states themselves at `--tol`.
    pub strict_direct: bool,
    pub strict_up_to_phase: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CovarianceResult {
    pub amplitudes: [[f64; 2]; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equator_sweep: Option<EquatorSweep>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeSummary {
    pub residual: f64,
    pub theta: f64,
    pub phi: f64,
}

impl From<ProbeResult> for ProbeSummary {
    fn from(p: ProbeResult) -> Self {
        ProbeSummary {
            residual: p.residual,
            theta: p.theta,
            phi: p.phi,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducibilityResult {
    pub amplitudes: [[f64; 2]; 2],
    pub cond_i: bool,
    pub cond_ii: bool,
    pub cond_iii: bool,
    pub reducible: bool,
    pub ancilla_basis: Option<String>,
    pub p: Option<f64>,
    pub u: Option<Vec<Vec<C64>>>,
    pub v: Option<Vec<Vec<C64>>>,
    pub residual: Option<f64>,
    /// Whether Eve may ignore the ancilla when measuring in each basis.
    pub drop_ancilla: BTreeMap<String, bool>,
    /// Best reduction found when no condition holds (a lower bound).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub necessity_probe: Option<ProbeSummary>,
}

impl ReducibilityResult {
    pub fn new(
        amplitudes: [[f64; 2]; 2],
        r: &ReducibilityReport,
        drop_ancilla: BTreeMap<String, bool>,
        necessity_probe: Option<ProbeSummary>,
    ) -> Self {
        ReducibilityResult {
            amplitudes,
            cond_i: r.cond_i,
            cond_ii: r.cond_ii,
            cond_iii: r.cond_iii,
            reducible: r.reducible,
            ancilla_basis: r.ancilla_basis.as_ref().map(|b| b.label().to_string()),
            p: r.p,
            u: r.u.as_ref().map(matrix_rows),
            v: r.v_op.as_ref().map(matrix_rows),
            residual: r.residual,
            drop_ancilla,
            necessity_probe,
        }
    }
}
