//! Single-qubit bases and (generalized) Bell states.

use std::fmt;

use nalgebra::{DMatrix, Matrix2, Matrix4};

use crate::error::{Error, Result};
use crate::qstate::{StateVector, C64, EXACT_TOL, ONE, ZERO};

/// Name tag of a basis.
#[derive(Clone, Debug, PartialEq)]
pub enum BasisLabel {
    Z,
    X,
    Y,
    ZPrime,
    Equatorial(f64),
    Bloch { theta: f64, phi: f64 },
    Conjugate(Box<BasisLabel>),
    Custom,
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Z => f.write_str("z"),
            BasisLabel::X => f.write_str("x"),
            BasisLabel::Y => f.write_str("y"),
            BasisLabel::ZPrime => f.write_str("zp"),
            BasisLabel::Equatorial(phi) => write!(f, "phi:{phi}"),
            BasisLabel::Bloch { theta, phi } => write!(f, "bloch:{theta},{phi}"),
            BasisLabel::Conjugate(inner) => write!(f, "{inner}*"),
            BasisLabel::Custom => f.write_str("custom"),
        }
    }
}

/// Orthonormal qubit basis stored as a unitary whose columns are `|ψ_0⟩`,
/// `|ψ_1⟩` in the computational basis.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitBasis {
    u: Matrix2<C64>,
    label: BasisLabel,
}

impl QubitBasis {
    fn from_columns(k0: [C64; 2], k1: [C64; 2], label: BasisLabel) -> Self {
        Self {
            u: Matrix2::new(k0[0], k1[0], k0[1], k1[1]),
            label,
        }
    }

    pub fn z() -> Self {
        Self::from_columns([ONE, ZERO], [ZERO, ONE], BasisLabel::Z)
    }

    /// `|±⟩ = (|0⟩ ± |1⟩)/√2`.
    pub fn x() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::from_columns([h, h], [h, -h], BasisLabel::X)
    }

    /// `|±⟩ = (|0⟩ ± i|1⟩)/√2`.
    pub fn y() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_columns(
            [C64::new(h, 0.0), C64::new(0.0, h)],
            [C64::new(h, 0.0), C64::new(0.0, -h)],
            BasisLabel::Y,
        )
    }

    /// `|0⟩, i|1⟩`.
    pub fn z_prime() -> Self {
        Self::from_columns([ONE, ZERO], [ZERO, C64::new(0.0, 1.0)], BasisLabel::ZPrime)
    }

    /// `|±⟩ = (|0⟩ ± e^{iφ}|1⟩)/√2`. `φ = 0` is X and `φ = π/2` is Y.
    pub fn equatorial(phi: f64) -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let e = C64::from_polar(h, phi);
        Self::from_columns([C64::new(h, 0.0), e], [C64::new(h, 0.0), -e], BasisLabel::Equatorial(phi))
    }

    /// Basis along the Bloch direction `(θ, φ)`:
    /// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩` and its orthogonal partner
    /// `sin(θ/2)|0⟩ − e^{iφ} cos(θ/2)|1⟩`.
    pub fn bloch(theta: f64, phi: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        let e = C64::from_polar(1.0, phi);
        Self::from_columns(
            [C64::new(c, 0.0), e * s],
            [C64::new(s, 0.0), -e * c],
            BasisLabel::Bloch { theta, phi },
        )
    }

    /// Any 2×2 unitary (columns are the kets).
    pub fn custom(u: Matrix2<C64>) -> Result<Self> {
        let dev = (u.adjoint() * u - Matrix2::identity()).camax();
        if !dev.is_finite() || dev > EXACT_TOL {
            return Err(Error::NotUnitary { deviation: dev });
        }
        Ok(Self {
            u,
            label: BasisLabel::Custom,
        })
    }

    pub fn label(&self) -> &BasisLabel {
        &self.label
    }

    pub fn unitary(&self) -> &Matrix2<C64> {
        &self.u
    }

    pub fn matrix(&self) -> DMatrix<C64> {
        DMatrix::from_iterator(2, 2, self.u.iter().copied())
    }

    /// `⟨i|ψ_j⟩`.
    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.u[(i, j)]
    }

    /// Coordinates of `|ψ_j⟩`.
    pub fn ket_amplitudes(&self, j: usize) -> [C64; 2] {
        [self.u[(0, j)], self.u[(1, j)]]
    }

    pub fn ket(&self, j: usize) -> StateVector {
        let [a, b] = self.ket_amplitudes(j);
        StateVector::unnormalized(vec![a, b])
            .and_then(StateVector::normalize)
            .expect("basis kets are unit vectors")
    }

    pub fn conjugate(&self) -> QubitBasis {
        conjugate_basis(self)
    }
}

/// Entrywise complex conjugate, `⟨i|ψ*_j⟩ = U*_{ij}`.
pub fn conjugate_basis(b: &QubitBasis) -> QubitBasis {
    let label = match &b.label {
        BasisLabel::Z => BasisLabel::Z,
        BasisLabel::X => BasisLabel::X,
        BasisLabel::Conjugate(inner) => (**inner).clone(),
        other => BasisLabel::Conjugate(Box::new(other.clone())),
    };
    QubitBasis {
        u: b.u.map(|c| c.conj()),
        label,
    }
}

/// Which wire of the pair carries the conjugated basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellSide {
    /// `|ψ_k⟩|ψ_{k+m}⟩`
    Plain,
    /// `|ψ*_k⟩|ψ_{k+m}⟩`
    AB,
    /// `|ψ_k⟩|ψ*_{k+m}⟩`
    EM,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BellLabel {
    m: u8,
    n: u8,
    side: BellSide,
}

impl BellLabel {
    pub fn new(m: u8, n: u8, side: BellSide) -> Result<Self> {
        if m > 1 || n > 1 {
            return Err(Error::InvalidBellLabel(format!("({m},{n})")));
        }
        Ok(Self { m, n, side })
    }

    pub fn plain(m: u8, n: u8) -> Result<Self> {
        Self::new(m, n, BellSide::Plain)
    }

    /// Label for row-major index `2m + n`.
    pub fn from_index(index: usize, side: BellSide) -> Result<Self> {
        if index > 3 {
            return Err(Error::InvalidBellLabel(format!("index {index}")));
        }
        Self::new((index >> 1) as u8, (index & 1) as u8, side)
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn side(&self) -> BellSide {
        self.side
    }

    pub fn index(&self) -> usize {
        2 * self.m as usize + self.n as usize
    }

    pub fn pair(&self) -> (u8, u8) {
        (self.m, self.n)
    }
}

fn bell_amplitudes(m: u8, n: u8, first: &QubitBasis, second: &QubitBasis) -> Vec<C64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![ZERO; 4];
    for k in 0..2usize {
        let sign = if k * n as usize % 2 == 1 { -h } else { h };
        let a = first.ket_amplitudes(k);
        let b = second.ket_amplitudes((k + m as usize) % 2);
        for i in 0..2 {
            for j in 0..2 {
                amps[2 * i + j] += a[i] * b[j] * sign;
            }
        }
    }
    amps
}

fn into_state(amps: Vec<C64>) -> StateVector {
    StateVector::unnormalized(amps)
        .and_then(StateVector::normalize)
        .expect("Bell states have unit norm")
}

/// `(1/√2) Σ_k (−1)^{kn} |ψ_k⟩|ψ_{k+m}⟩`. Only the plain side is accepted.
pub fn bell_state(label: BellLabel, basis: &QubitBasis) -> Result<StateVector> {
    if label.side != BellSide::Plain {
        return Err(Error::InvalidBellLabel(
            "bell_state takes a plain label; use generalized_bell".into(),
        ));
    }
    Ok(generalized_bell(label, basis))
}

/// Bell state with the conjugated basis on the wire selected by `label.side()`.
pub fn generalized_bell(label: BellLabel, basis: &QubitBasis) -> StateVector {
    let conj = basis.conjugate();
    let amps = match label.side {
        BellSide::Plain => bell_amplitudes(label.m, label.n, basis, basis),
        BellSide::AB => bell_amplitudes(label.m, label.n, &conj, basis),
        BellSide::EM => bell_amplitudes(label.m, label.n, basis, &conj),
    };
    into_state(amps)
}

/// All four states of a family, in index order `2m + n`.
pub fn bell_family(side: BellSide, basis: &QubitBasis) -> [StateVector; 4] {
    std::array::from_fn(|i| {
        generalized_bell(
            BellLabel::from_index(i, side).expect("index below 4"),
            basis,
        )
    })
}

/// `T[(m,n),(m′,n′)] = ⟨B^{ψ}_{m*,n}|B^{ψ̃}_{m′*,n′}⟩` for AB-side families.
pub fn bell_overlap_table(basis1: &QubitBasis, basis2: &QubitBasis) -> Matrix4<C64> {
    let f1 = bell_family(BellSide::AB, basis1);
    let f2 = bell_family(BellSide::AB, basis2);
    Matrix4::from_fn(|i, j| f1[i].inner(&f2[j]).expect("both four-dimensional"))
}

/// `c_{m,n} = ⟨B^{ψ}_{m*,n}|_{AB} ⟨B^{ψ}_{m,n*}|_{EM} |state⟩`.
pub fn bell_coefficients(state: &StateVector, basis: &QubitBasis) -> Result<Matrix2<C64>> {
    let full = bell_coefficient_matrix(state, basis)?;
    Ok(Matrix2::new(full[(0, 0)], full[(1, 1)], full[(2, 2)], full[(3, 3)]))
}

/// Every `⟨B^{ψ}_{i}|_{AB} ⟨B^{ψ}_{j}|_{EM} |state⟩`; the Cerf form is the
/// diagonal of this matrix.
pub fn bell_coefficient_matrix(state: &StateVector, basis: &QubitBasis) -> Result<Matrix4<C64>> {
    if state.dim() != 16 {
        return Err(Error::DimensionMismatch {
            expected: 16,
            found: state.dim(),
        });
    }
    let ab = bell_family(BellSide::AB, basis);
    let em = bell_family(BellSide::EM, basis);
    let amps = state.amplitudes();
    Ok(Matrix4::from_fn(|i, j| {
        let l = ab[i].amplitudes();
        let r = em[j].amplitudes();
        let mut acc = ZERO;
        for p in 0..4 {
            for q in 0..4 {
                acc += (l[p] * r[q]).conj() * amps[4 * p + q];
            }
        }
        acc
    }))
}

/// If every AB-side state of `basis` equals a phase times some Z-basis Bell
/// state, returns that permutation (`perm[i]` is the Z index matching index
/// `i` of `basis`).
pub fn signed_permutation_to_z(basis: &QubitBasis) -> Option<[usize; 4]> {
    let table = bell_overlap_table(&QubitBasis::z(), basis);
    let mut perm = [0usize; 4];
    for (j, slot) in perm.iter_mut().enumerate() {
        let hits: Vec<usize> = (0..4).filter(|&i| table[(i, j)].norm() > 1.0 - 1e-10).collect();
        if hits.len() != 1 {
            return None;
        }
        *slot = hits[0];
    }
    Some(perm)
}
