//! Cloning-machine constructors: Cerf-form states, the phase-covariant and
//! universal amplitude families, and the ancilla-free NG machine.

use nalgebra::{DMatrix, Matrix2};
use serde::Serialize;

use crate::bell::{generalized_bell, BellLabel, BellSide, QubitBasis};
use crate::error::{Error, Result};
use crate::qstate::{tensor, Operator, StateVector, C64, EXACT_TOL, NUMERIC_TOL, ONE, ZERO};

/// `x` at which the universal cloner gives Bob and Eve the same fidelity 5/6.
pub const SYMMETRIC_UNIVERSAL_X: f64 = 0.288_675_134_594_812_9;

/// Real, nonnegative 2×2 amplitude matrix `a_{m,n}` with unit Frobenius norm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CloningAmplitudes {
    a: [[f64; 2]; 2],
}

impl CloningAmplitudes {
    pub fn new(a: [[f64; 2]; 2]) -> Result<Self> {
        Self::check_entries(&a)?;
        let norm_sqr: f64 = a.iter().flatten().map(|v| v * v).sum();
        if (norm_sqr - 1.0).abs() > EXACT_TOL {
            return Err(Error::InvalidAmplitudes(format!(
                "squared norm {norm_sqr} differs from 1"
            )));
        }
        Ok(Self { a })
    }

    /// Rescales a nonzero nonnegative matrix to unit norm.
    pub fn from_unnormalized(a: [[f64; 2]; 2]) -> Result<Self> {
        Self::check_entries(&a)?;
        let norm = a.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-150 {
            return Err(Error::InvalidAmplitudes("all entries are zero".into()));
        }
        Ok(Self {
            a: a.map(|row| row.map(|v| v / norm)),
        })
    }

    fn check_entries(a: &[[f64; 2]; 2]) -> Result<()> {
        for &v in a.iter().flatten() {
            if !v.is_finite() {
                return Err(Error::InvalidAmplitudes("non-finite entry".into()));
            }
            if v < 0.0 {
                return Err(Error::InvalidAmplitudes(format!("negative entry {v}")));
            }
        }
        Ok(())
    }

    pub fn get(&self, m: usize, n: usize) -> f64 {
        self.a[m][n]
    }

    pub fn entries(&self) -> [[f64; 2]; 2] {
        self.a
    }

    /// Entries in index order `2m + n`.
    pub fn flat(&self) -> [f64; 4] {
        [self.a[0][0], self.a[0][1], self.a[1][0], self.a[1][1]]
    }

    pub fn as_matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.a[0][0], self.a[0][1], self.a[1][0], self.a[1][1])
    }

    /// Perfect channel `(1, 0; 0, 0)`.
    pub fn identity_channel() -> Self {
        Self {
            a: [[1.0, 0.0], [0.0, 0.0]],
        }
    }
}

/// `(v, y; x, x)`. The constraint `v² + y² + 2x² = 1` is checked to
/// [`NUMERIC_TOL`] and the result renormalized.
pub fn fggnp_amplitudes(v: f64, y: f64, x: f64) -> Result<CloningAmplitudes> {
    let norm_sqr = v * v + y * y + 2.0 * x * x;
    if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NUMERIC_TOL {
        return Err(Error::InvalidAmplitudes(format!(
            "v² + y² + 2x² = {norm_sqr}, expected 1"
        )));
    }
    CloningAmplitudes::from_unnormalized([[v, y], [x, x]])
}

/// `v = 1/2 + 1/√8`, `y = 1/2 − 1/√8`, `x = 1/√8`.
pub fn optimal_fggnp_parameters() -> (f64, f64, f64) {
    let r = 1.0 / 8f64.sqrt();
    (0.5 + r, 0.5 - r, r)
}

pub fn optimal_fggnp_amplitudes() -> CloningAmplitudes {
    let (v, y, x) = optimal_fggnp_parameters();
    fggnp_amplitudes(v, y, x).expect("optimal parameters are normalized")
}

/// Which clone a universal cloner favours.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UniversalRegime {
    BobFavoured,
    Symmetric,
    EveFavoured,
}

/// `(√(1−3x²), x; x, x)` for `0 ≤ x < 1/2`.
pub fn universal_amplitudes(x: f64) -> Result<CloningAmplitudes> {
    if !(0.0..0.5).contains(&x) {
        return Err(Error::OutOfRange(format!(
            "universal cloner needs 0 <= x < 1/2, got {x}"
        )));
    }
    CloningAmplitudes::new([[(1.0 - 3.0 * x * x).sqrt(), x], [x, x]])
}

pub fn universal_regime(x: f64) -> UniversalRegime {
    if (x - SYMMETRIC_UNIVERSAL_X).abs() <= EXACT_TOL {
        UniversalRegime::Symmetric
    } else if x < SYMMETRIC_UNIVERSAL_X {
        UniversalRegime::BobFavoured
    } else {
        UniversalRegime::EveFavoured
    }
}

/// How a cloning state was produced.
#[derive(Clone, Debug, PartialEq)]
pub enum CloningSource {
    Cerf {
        amplitudes: CloningAmplitudes,
        basis: QubitBasis,
    },
    Other(String),
}

/// Four-wire state on `A, B, E, M`.
#[derive(Clone, Debug, PartialEq)]
pub struct CloningState {
    psi: StateVector,
    source: CloningSource,
}

impl CloningState {
    /// Wraps an arbitrary normalized 16-dimensional state.
    pub fn from_state(psi: StateVector, description: impl Into<String>) -> Result<Self> {
        check_clone_state(&psi, 16)?;
        Ok(Self {
            psi,
            source: CloningSource::Other(description.into()),
        })
    }

    pub fn state(&self) -> &StateVector {
        &self.psi
    }

    pub fn source(&self) -> &CloningSource {
        &self.source
    }
}

fn check_clone_state(psi: &StateVector, dim: usize) -> Result<()> {
    if psi.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: psi.dim(),
        });
    }
    if !psi.is_normalized() {
        return Err(Error::NotNormalized {
            norm_sqr: psi.norm_sqr(),
        });
    }
    Ok(())
}

/// `Σ a_{m,n} |B^ψ_{m*,n}⟩_{AB} ⊗ |B^ψ_{m,n*}⟩_{EM}`.
pub fn cerf_state(a: &CloningAmplitudes, basis: &QubitBasis) -> CloningState {
    let psi = superpose_bell_products(&a.flat().map(|v| C64::new(v, 0.0)), basis)
        .normalize()
        .expect("unit-norm amplitudes give a unit-norm state");
    CloningState {
        psi,
        source: CloningSource::Cerf {
            amplitudes: *a,
            basis: basis.clone(),
        },
    }
}

/// Unnormalized `Σ c_i |B^ψ_{i}⟩_{AB}|B^ψ_{i}⟩_{EM}` for complex coefficients.
pub fn superpose_bell_products(coefficients: &[C64; 4], basis: &QubitBasis) -> StateVector {
    let mut acc = vec![ZERO; 16];
    for (i, c) in coefficients.iter().enumerate() {
        if c.norm() == 0.0 {
            continue;
        }
        let ab = generalized_bell(BellLabel::from_index(i, BellSide::AB).expect("i < 4"), basis);
        let em = generalized_bell(BellLabel::from_index(i, BellSide::EM).expect("i < 4"), basis);
        let term = tensor(&ab, &em).expect("four wires fit");
        for (slot, t) in acc.iter_mut().zip(term.amplitudes()) {
            *slot += c * t;
        }
    }
    StateVector::unnormalized(acc).expect("sixteen finite amplitudes")
}

/// Three-wire state on `A, B, E`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoQubitCloneState {
    psi: StateVector,
    alpha: Option<f64>,
}

impl TwoQubitCloneState {
    pub fn from_state(psi: StateVector) -> Result<Self> {
        check_clone_state(&psi, 8)?;
        Ok(Self { psi, alpha: None })
    }

    pub fn state(&self) -> &StateVector {
        &self.psi
    }

    /// NG angle, when built by [`ng_state`] or [`ng_flipped_state`].
    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::PI).contains(&alpha) {
        return Err(Error::OutOfRange(format!("alpha must lie in [0, π], got {alpha}")));
    }
    Ok(())
}

fn ng_from_terms(alpha: f64, terms: [usize; 3]) -> Result<TwoQubitCloneState> {
    check_alpha(alpha)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (s, c) = alpha.sin_cos();
    let mut amps = vec![ZERO; 8];
    amps[terms[0]] = C64::new(h, 0.0);
    amps[terms[1]] = C64::new(h * c, 0.0);
    amps[terms[2]] = C64::new(h * s, 0.0);
    Ok(TwoQubitCloneState {
        psi: StateVector::unnormalized(amps)?.normalize()?,
        alpha: Some(alpha),
    })
}

/// `(|000⟩ + cos α |110⟩ + sin α |101⟩)/√2`.
pub fn ng_state(alpha: f64) -> Result<TwoQubitCloneState> {
    ng_from_terms(alpha, [0b000, 0b110, 0b101])
}

/// `(|111⟩ + cos α |001⟩ + sin α |010⟩)/√2`.
pub fn ng_flipped_state(alpha: f64) -> Result<TwoQubitCloneState> {
    ng_from_terms(alpha, [0b111, 0b001, 0b010])
}

/// The two-qubit gate on `B, E`:
/// `|00⟩ → |00⟩`, `|10⟩ → cos α|10⟩ + sin α|01⟩`,
/// `|01⟩ → cos α|01⟩ − sin α|10⟩`, `|11⟩ → |11⟩`.
pub fn ng_gate(alpha: f64) -> Operator {
    let (s, c) = alpha.sin_cos();
    let (s, c) = (C64::new(s, 0.0), C64::new(c, 0.0));
    #[rustfmt::skip]
    let m = DMatrix::from_row_slice(4, 4, &[
        ONE,  ZERO, ZERO, ZERO,
        ZERO, c,    s,    ZERO,
        ZERO, -s,   c,    ZERO,
        ZERO, ZERO, ZERO, ONE,
    ]);
    Operator::new(m).expect("square")
}

/// `U_{BE}(|input⟩ ⊗ |0⟩_E)`.
pub fn apply_ng_gate(input: &StateVector, alpha: f64) -> Result<StateVector> {
    if input.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: input.dim(),
        });
    }
    check_alpha(alpha)?;
    if !input.is_normalized() {
        return Err(Error::NotNormalized {
            norm_sqr: input.norm_sqr(),
        });
    }
    let blank = StateVector::basis_state(1, 0)?;
    ng_gate(alpha).apply(&tensor(input, &blank)?)
}

/// `α = atan2(2x, v − y)` for members of the `x² = vy` family.
pub fn ng_angle_from_fggnp(v: f64, y: f64, x: f64) -> Result<f64> {
    let gap = x * x - v * y;
    if !gap.is_finite() || gap.abs() > NUMERIC_TOL {
        return Err(Error::NotInReducibleFamily(format!("x² − vy = {gap:e}")));
    }
    fggnp_amplitudes(v, y, x)?;
    if v < 0.0 || y < 0.0 || x < 0.0 {
        return Err(Error::InvalidAmplitudes("negative parameter".into()));
    }
    Ok((2.0 * x).atan2(v - y))
}
