//! Small-register complex linear algebra.
//!
//! Registers are ordered left to right: wire 0 is the most significant bit of
//! the computational-basis index, so a four-wire register `A,B,E,M` stores the
//! amplitude of `|a b e m⟩` at index `8a + 4b + 2e + m`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::bell::QubitBasis;
use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Largest register handled by this crate.
pub const MAX_WIRES: usize = 12;
/// Tolerance for identities that hold exactly by construction.
pub const EXACT_TOL: f64 = 1e-12;
/// Tolerance for results of chained numerics.
pub const NUMERIC_TOL: f64 = 1e-10;
/// Outcome probabilities below this are treated as impossible.
pub const MIN_PROBABILITY: f64 = 1e-14;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

fn wires_for_dim(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    let wires = dim.trailing_zeros() as usize;
    if wires > MAX_WIRES {
        return Err(Error::RegisterTooLarge {
            wires,
            max: MAX_WIRES,
        });
    }
    Ok(wires)
}

#[inline]
fn bit_of(index: usize, wire: usize, wires: usize) -> usize {
    (index >> (wires - 1 - wire)) & 1
}

/// Complex amplitude vector over the `2^n` computational basis states of an
/// `n`-wire register.
///
/// States built through [`StateVector::new`] are checked to be normalized.
/// Intermediates (sums, projections before renormalization) carry a cleared
/// normalization flag so they cannot be mistaken for physical states.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: DVector<C64>,
    wires: usize,
    normalized: bool,
}

impl StateVector {
    /// Normalized state; fails if the squared norm differs from 1 by more than
    /// [`EXACT_TOL`].
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        let state = Self::unnormalized(amps)?;
        state.checked_normalized()
    }

    /// Unnormalized intermediate, flagged as such.
    pub fn unnormalized(amps: Vec<C64>) -> Result<Self> {
        let wires = wires_for_dim(amps.len())?;
        if amps.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            amps: DVector::from_vec(amps),
            wires,
            normalized: false,
        })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(amps.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_dvector(amps: DVector<C64>) -> Result<Self> {
        Self::new(amps.iter().copied().collect())
    }

    /// Computational basis state `|index⟩` on `wires` wires.
    pub fn basis_state(wires: usize, index: usize) -> Result<Self> {
        if wires > MAX_WIRES {
            return Err(Error::RegisterTooLarge {
                wires,
                max: MAX_WIRES,
            });
        }
        let dim = 1usize << wires;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: index + 1,
            });
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Self::new(amps)
    }

    /// Verifies the norm and sets the normalization flag without rescaling.
    pub fn checked_normalized(mut self) -> Result<Self> {
        let norm_sqr = self.norm_sqr();
        if (norm_sqr - 1.0).abs() > EXACT_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        self.normalized = true;
        Ok(self)
    }

    /// Rescales to unit norm.
    pub fn normalize(mut self) -> Result<Self> {
        let norm_sqr = self.norm_sqr();
        if norm_sqr < MIN_PROBABILITY {
            return Err(Error::ImpossibleOutcome {
                probability: norm_sqr,
            });
        }
        self.amps /= C64::new(norm_sqr.sqrt(), 0.0);
        self.normalized = true;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn wires(&self) -> usize {
        self.wires
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn amplitudes(&self) -> &[C64] {
        self.amps.as_slice()
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    pub fn as_dvector(&self) -> &DVector<C64> {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    fn check_same_dim(&self, other: &StateVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        self.check_same_dim(other)?;
        Ok(self.amps.dotc(&other.amps))
    }

    pub fn scaled(&self, factor: C64) -> StateVector {
        StateVector {
            amps: &self.amps * factor,
            wires: self.wires,
            normalized: false,
        }
    }

    pub fn add(&self, other: &StateVector) -> Result<StateVector> {
        self.check_same_dim(other)?;
        Ok(StateVector {
            amps: &self.amps + &other.amps,
            wires: self.wires,
            normalized: false,
        })
    }

    /// Largest componentwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `|ψ⟩⟨ψ|` as a raw matrix.
    pub fn outer(&self) -> DMatrix<C64> {
        &self.amps * self.amps.adjoint()
    }
}

/// Positive semidefinite, unit-trace Hermitian matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<C64>,
    wires: usize,
}

impl DensityMatrix {
    pub fn new(entries: DMatrix<C64>) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        let wires = wires_for_dim(rows)?;
        let herm_dev = (&entries - entries.adjoint()).camax();
        if herm_dev > EXACT_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (deviation {herm_dev:e})"
            )));
        }
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > EXACT_TOL || trace.im.abs() > EXACT_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace {trace} differs from 1"
            )));
        }
        let min_eig = entries
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -NUMERIC_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(Self { entries, wires })
    }

    pub fn from_pure(state: &StateVector) -> Result<Self> {
        if !state.is_normalized() {
            return Err(Error::NotNormalized {
                norm_sqr: state.norm_sqr(),
            });
        }
        Self::new(state.outer())
    }

    /// Convex combination `Σ w_k ρ_k`; weights must be nonnegative and sum to 1.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidDensityMatrix("empty mixture".into()))?;
        let dim = first.1.dim();
        let mut acc = DMatrix::from_element(dim, dim, ZERO);
        for (w, rho) in parts {
            if *w < 0.0 || !w.is_finite() {
                return Err(Error::InvalidDensityMatrix(format!("bad weight {w}")));
            }
            if rho.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: rho.dim(),
                });
            }
            acc += &rho.entries * C64::new(*w, 0.0);
        }
        Self::new(acc)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn wires(&self) -> usize {
        self.wires
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }

    /// `⟨ψ|ρ|ψ⟩` for a state on the same register.
    pub fn expectation(&self, state: &StateVector) -> Result<f64> {
        if state.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: state.dim(),
            });
        }
        let v = state.as_dvector();
        Ok(v.dotc(&(&self.entries * v)).re)
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok((&self.entries - &other.entries).camax())
    }
}

/// Square complex matrix acting on a register. Unitarity is not assumed.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    m: DMatrix<C64>,
}

impl Operator {
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        let (rows, cols) = m.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows == 0 {
            return Err(Error::NotPowerOfTwo(0));
        }
        Ok(Self { m })
    }

    pub fn from_columns(columns: &[DVector<C64>]) -> Result<Self> {
        Self::new(DMatrix::from_columns(columns))
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            m: DMatrix::identity(dim, dim),
        }
    }

    pub fn pauli_x() -> Self {
        Self {
            m: DMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        }
    }

    pub fn pauli_y() -> Self {
        Self {
            m: DMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
        }
    }

    pub fn pauli_z() -> Self {
        Self {
            m: DMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn column(&self, j: usize) -> DVector<C64> {
        self.m.column(j).into_owned()
    }

    pub fn dagger(&self) -> Operator {
        Operator {
            m: self.m.adjoint(),
        }
    }

    pub fn kron(&self, other: &Operator) -> Operator {
        Operator {
            m: self.m.kronecker(&other.m),
        }
    }

    pub fn compose(&self, other: &Operator) -> Result<Operator> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(Operator { m: &self.m * &other.m })
    }

    /// Matrix-vector product. The result keeps the normalization flag only when
    /// the input was normalized and the norm survived within [`EXACT_TOL`].
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: state.dim(),
            });
        }
        let out = StateVector::unnormalized((&self.m * state.as_dvector()).iter().copied().collect())?;
        if state.is_normalized() {
            Ok(out.clone().checked_normalized().unwrap_or(out))
        } else {
            Ok(out)
        }
    }
}

/// Applies a `2^k`-dimensional operator to the listed wires (in the listed
/// order) of a register, leaving the other wires untouched.
pub fn apply_on_wires(state: &StateVector, op: &Operator, wires: &[usize]) -> Result<StateVector> {
    let n = state.wires();
    let k = wires.len();
    if op.dim() != 1 << k {
        return Err(Error::DimensionMismatch {
            expected: 1 << k,
            found: op.dim(),
        });
    }
    check_distinct_wires(wires, n)?;
    let mask: usize = wires.iter().map(|&w| 1usize << (n - 1 - w)).sum();
    let sub_index = |i: usize| -> usize {
        wires
            .iter()
            .fold(0usize, |acc, &w| (acc << 1) | bit_of(i, w, n))
    };
    let embed = |base: usize, sub: usize| -> usize {
        wires.iter().enumerate().fold(base & !mask, |acc, (pos, &w)| {
            let bit = (sub >> (k - 1 - pos)) & 1;
            acc | (bit << (n - 1 - w))
        })
    };
    let m = op.matrix();
    let amps = state.amplitudes();
    let mut out = vec![ZERO; state.dim()];
    for (i, slot) in out.iter_mut().enumerate() {
        let row = sub_index(i);
        *slot = (0..1usize << k)
            .map(|col| m[(row, col)] * amps[embed(i, col)])
            .sum();
    }
    let out = StateVector::unnormalized(out)?;
    if state.is_normalized() {
        Ok(out.clone().checked_normalized().unwrap_or(out))
    } else {
        Ok(out)
    }
}

fn check_distinct_wires(wires: &[usize], total: usize) -> Result<()> {
    for (i, &w) in wires.iter().enumerate() {
        if w >= total {
            return Err(Error::WireOutOfRange { wire: w, wires: total });
        }
        if wires[..i].contains(&w) {
            return Err(Error::InvalidWireSelection(format!("wire {w} repeated")));
        }
    }
    Ok(())
}

/// Tensor product `a ⊗ b`; `b` occupies the trailing wires.
pub fn tensor(a: &StateVector, b: &StateVector) -> Result<StateVector> {
    let wires = a.wires() + b.wires();
    if wires > MAX_WIRES {
        return Err(Error::RegisterTooLarge {
            wires,
            max: MAX_WIRES,
        });
    }
    let amps = a.as_dvector().kronecker(b.as_dvector());
    let out = StateVector::unnormalized(amps.iter().copied().collect())?;
    if a.is_normalized() && b.is_normalized() {
        Ok(out.clone().checked_normalized().unwrap_or(out))
    } else {
        Ok(out)
    }
}

/// Traces out every wire not listed in `keep`. Kept wires appear in ascending
/// wire order in the result.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize], total_wires: usize) -> Result<DensityMatrix> {
    if rho.wires() != total_wires {
        return Err(Error::DimensionMismatch {
            expected: 1 << total_wires,
            found: rho.dim(),
        });
    }
    if keep.is_empty() {
        return Err(Error::InvalidWireSelection("nothing kept".into()));
    }
    check_distinct_wires(keep, total_wires)?;
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    let traced: Vec<usize> = (0..total_wires).filter(|w| !kept.contains(w)).collect();

    let n = total_wires;
    let compose = |k_idx: usize, t_idx: usize| -> usize {
        let mut full = 0usize;
        for (pos, &w) in kept.iter().enumerate() {
            let bit = (k_idx >> (kept.len() - 1 - pos)) & 1;
            full |= bit << (n - 1 - w);
        }
        for (pos, &w) in traced.iter().enumerate() {
            let bit = (t_idx >> (traced.len() - 1 - pos)) & 1;
            full |= bit << (n - 1 - w);
        }
        full
    };
    let kd = 1usize << kept.len();
    let td = 1usize << traced.len();
    let src = rho.entries();
    let out = DMatrix::from_fn(kd, kd, |i, j| {
        (0..td).map(|t| src[(compose(i, t), compose(j, t))]).sum()
    });
    DensityMatrix::new(out)
}

/// Projects `wire` onto `⟨bra|` (the conjugate of the given one-qubit ket).
/// Returns the renormalized state on the remaining wires and the outcome
/// probability.
pub fn project_wire(state: &StateVector, wire: usize, bra: &StateVector) -> Result<(StateVector, f64)> {
    if bra.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: bra.dim(),
        });
    }
    let n = state.wires();
    if wire >= n {
        return Err(Error::WireOutOfRange { wire, wires: n });
    }
    let b = bra.amplitudes();
    let shift = n - 1 - wire;
    let low_mask = (1usize << shift) - 1;
    let rest = 1usize << (n - 1);
    let amps = state.amplitudes();
    let projected: Vec<C64> = (0..rest)
        .map(|r| {
            let hi = (r >> shift) << (shift + 1);
            let lo = r & low_mask;
            b[0].conj() * amps[hi | lo] + b[1].conj() * amps[hi | (1 << shift) | lo]
        })
        .collect();
    let raw = StateVector::unnormalized(projected)?;
    let probability = raw.norm_sqr();
    if probability < MIN_PROBABILITY {
        return Err(Error::ImpossibleOutcome { probability });
    }
    Ok((raw.normalize()?, probability.min(1.0)))
}

/// `true` iff `max |(op† op − 1)_{ij}| ≤ tol`.
pub fn is_unitary(op: &Operator, tol: f64) -> bool {
    unitarity_deviation(op) <= tol
}

pub fn unitarity_deviation(op: &Operator) -> f64 {
    let m = op.matrix();
    let d = m.nrows();
    (m.adjoint() * m - DMatrix::<C64>::identity(d, d)).camax()
}

/// Extends orthonormal columns to a full unitary. The extra columns are
/// obtained by Gram-Schmidt on the canonical basis vectors taken in index
/// order, skipping candidates already (nearly) in the span.
pub fn complete_to_unitary(columns: &[DVector<C64>], dim: usize) -> Result<Operator> {
    if columns.len() > dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: columns.len(),
        });
    }
    for c in columns {
        if c.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: c.len(),
            });
        }
    }
    let gram_dev = gram_deviation(columns);
    if gram_dev > NUMERIC_TOL {
        return Err(Error::NotOrthonormal {
            deviation: gram_dev,
        });
    }
    let mut basis: Vec<DVector<C64>> = columns.to_vec();
    let mut candidate = 0;
    while basis.len() < dim {
        let mut v = DVector::from_element(dim, ZERO);
        v[candidate] = ONE;
        candidate += 1;
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for q in &basis {
                let overlap = q.dotc(&v);
                v -= q * overlap;
            }
        }
        let norm = v.norm();
        if norm > 1e-6 {
            basis.push(v / C64::new(norm, 0.0));
        }
    }
    Operator::from_columns(&basis)
}

fn gram_deviation(columns: &[DVector<C64>]) -> f64 {
    let mut dev: f64 = 0.0;
    for (i, a) in columns.iter().enumerate() {
        for (j, b) in columns.iter().enumerate() {
            let target = if i == j { ONE } else { ZERO };
            dev = dev.max((a.dotc(b) - target).norm());
        }
    }
    dev
}

/// `true` iff `|⟨a|b⟩| ≥ 1 − tol`.
pub fn equal_up_to_global_phase(a: &StateVector, b: &StateVector, tol: f64) -> Result<bool> {
    Ok(a.inner(b)?.norm() >= 1.0 - tol)
}

/// Outcome probabilities of a per-wire product-basis measurement, indexed like
/// the computational basis (entry `(i_1 … i_n)` at the index with those bits).
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityTable {
    wires: usize,
    probs: Vec<f64>,
}

impl ProbabilityTable {
    pub fn wires(&self) -> usize {
        self.wires
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    /// Probability of the outcome string `outcomes` (one bit per wire).
    pub fn get(&self, outcomes: &[usize]) -> f64 {
        debug_assert_eq!(outcomes.len(), self.wires);
        let idx = outcomes.iter().fold(0usize, |acc, &b| (acc << 1) | (b & 1));
        self.probs[idx]
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Marginal table over the listed wires, in ascending wire order.
    pub fn marginal(&self, keep: &[usize]) -> Result<ProbabilityTable> {
        check_distinct_wires(keep, self.wires)?;
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        let mut probs = vec![0.0; 1 << kept.len()];
        for (i, p) in self.probs.iter().enumerate() {
            let idx = kept
                .iter()
                .fold(0usize, |acc, &w| (acc << 1) | bit_of(i, w, self.wires));
            probs[idx] += p;
        }
        Ok(ProbabilityTable {
            wires: kept.len(),
            probs,
        })
    }
}

/// `|⟨ψ_{i_1} … ψ_{i_n}|state⟩|²` for every outcome string, with wire `w`
/// measured in `bases[w]`.
pub fn product_basis_probabilities(state: &StateVector, bases: &[QubitBasis]) -> Result<ProbabilityTable> {
    if bases.len() != state.wires() {
        return Err(Error::DimensionMismatch {
            expected: state.wires(),
            found: bases.len(),
        });
    }
    let mut rotated = state.clone();
    for (w, b) in bases.iter().enumerate() {
        let adj = Operator::new(b.matrix().adjoint())?;
        rotated = apply_on_wires(&rotated, &adj, &[w])?;
    }
    Ok(ProbabilityTable {
        wires: state.wires(),
        probs: rotated.amplitudes().iter().map(|c| c.norm_sqr()).collect(),
    })
}
