//! Two-qubit states: pure states, the Werner family, the θ-family
//! `cos θ|01⟩ − sin θ|10⟩`, the pseudo-mixture used by the decomposition
//! solver, and the Pauli (Bloch) representation.
//!
//! Basis order is |00⟩, |01⟩, |10⟩, |11⟩ throughout, with subsystem A as the
//! left tensor factor.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_range, Error, Result};
use crate::numerics::{kron, min_eigenvalue, pauli, ComplexMatrix, DEFAULT_PSD_TOL};

/// Tolerance on `Σ|c_i|² = 1` and on `tr ρ = 1`.
pub const NORM_TOL: f64 = 1e-12;

/// Normalized two-qubit pure state `c0|00⟩ + c1|01⟩ + c2|10⟩ + c3|11⟩`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[Complex64; 4]", into = "[Complex64; 4]")]
pub struct PureState {
    amplitudes: [Complex64; 4],
}

impl PureState {
    pub fn new(amplitudes: [Complex64; 4]) -> Result<Self> {
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { amplitudes })
    }

    /// Real amplitudes, checked for normalization.
    pub fn from_real(c: [f64; 4]) -> Result<Self> {
        Self::new(c.map(|x| Complex64::new(x, 0.0)))
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amplitudes: [Complex64; 4]) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized {
                norm_sq: norm * norm,
            });
        }
        Self::new(amplitudes.map(|z| z / norm))
    }

    /// Computational basis state `|k⟩`, k in 0..4.
    pub fn basis(k: usize) -> Self {
        let mut amplitudes = [Complex64::new(0.0, 0.0); 4];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amplitudes
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }
}

impl TryFrom<[Complex64; 4]> for PureState {
    type Error = Error;

    fn try_from(amplitudes: [Complex64; 4]) -> Result<Self> {
        Self::new(amplitudes)
    }
}

impl From<PureState> for [Complex64; 4] {
    fn from(s: PureState) -> Self {
        s.amplitudes
    }
}

/// A validated two-qubit density matrix: Hermitian, unit trace and positive
/// semidefinite up to `psd_tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DensityMatrixRepr")]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    psd_tolerance: f64,
}

#[derive(Deserialize)]
struct DensityMatrixRepr {
    matrix: ComplexMatrix,
    psd_tolerance: f64,
}

impl TryFrom<DensityMatrixRepr> for DensityMatrix {
    type Error = Error;

    fn try_from(r: DensityMatrixRepr) -> Result<Self> {
        Self::with_tolerance(r.matrix, r.psd_tolerance)
    }
}

impl DensityMatrix {
    /// Validates with the default PSD tolerance.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, DEFAULT_PSD_TOL)
    }

    pub fn with_tolerance(matrix: ComplexMatrix, psd_tolerance: f64) -> Result<Self> {
        if psd_tolerance.is_nan() || psd_tolerance < 0.0 {
            return Err(Error::InvalidOption(format!(
                "PSD tolerance must be >= 0, got {psd_tolerance}"
            )));
        }
        check_two_qubit(&matrix)?;
        check_unit_trace(&matrix)?;
        let min_eigenvalue = min_eigenvalue(&matrix)?;
        if min_eigenvalue < -psd_tolerance {
            return Err(Error::NotPositive {
                min_eigenvalue,
                tolerance: psd_tolerance,
            });
        }
        Ok(Self {
            matrix,
            psd_tolerance,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn psd_tolerance(&self) -> f64 {
        self.psd_tolerance
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

pub(crate) fn check_two_qubit(m: &ComplexMatrix) -> Result<()> {
    if m.dim() == 4 {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "expected a 4x4 two-qubit matrix, got {0}x{0}",
            m.dim()
        )))
    }
}

/// Hermitian and trace one, both within tolerance.
pub(crate) fn check_unit_trace(m: &ComplexMatrix) -> Result<()> {
    m.check_hermitian()?;
    let tr = m.trace();
    if (tr.re - 1.0).abs() > NORM_TOL || tr.im.abs() > NORM_TOL {
        return Err(Error::BadTrace {
            re: tr.re,
            im: tr.im,
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BellState {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

/// The four Bell states; `PsiMinus` is the singlet `(|01⟩ − |10⟩)/√2`.
pub fn bell_state(which: BellState) -> PureState {
    let h = FRAC_1_SQRT_2;
    let c = match which {
        BellState::PhiPlus => [h, 0.0, 0.0, h],
        BellState::PhiMinus => [h, 0.0, 0.0, -h],
        BellState::PsiPlus => [0.0, h, h, 0.0],
        BellState::PsiMinus => [0.0, h, -h, 0.0],
    };
    PureState::from_real(c).expect("Bell states are normalized")
}

/// Projector `|ψ⟩⟨ψ|`.
pub fn pure_to_density(psi: &PureState) -> DensityMatrix {
    let a = psi.amplitudes();
    let matrix = ComplexMatrix::outer(a, a).expect("four amplitudes give a 4x4 projector");
    DensityMatrix {
        matrix,
        psd_tolerance: DEFAULT_PSD_TOL,
    }
}

/// `I/4`.
pub fn maximally_mixed() -> DensityMatrix {
    let matrix = ComplexMatrix::identity(4).expect("dim 4").scale_re(0.25);
    DensityMatrix {
        matrix,
        psd_tolerance: DEFAULT_PSD_TOL,
    }
}

/// Weight ε of the singlet in a Werner state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WernerParam {
    epsilon: f64,
}

impl WernerParam {
    pub fn new(epsilon: f64) -> Result<Self> {
        check_range("epsilon", epsilon, 0.0, 1.0, "[0, 1]")?;
        Ok(Self { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// `(1 − ε) I/4 + ε |Ψ⁻⟩⟨Ψ⁻|`.
pub fn werner(p: WernerParam) -> DensityMatrix {
    let eps = p.epsilon;
    let singlet = pure_to_density(&bell_state(BellState::PsiMinus));
    let matrix = maximally_mixed()
        .matrix
        .scale_re(1.0 - eps)
        .add(&singlet.matrix.scale_re(eps))
        .expect("both 4x4");
    DensityMatrix {
        matrix,
        psd_tolerance: DEFAULT_PSD_TOL,
    }
}

/// The Werner state at ε = 1/2.
pub fn rho_half() -> DensityMatrix {
    werner(WernerParam { epsilon: 0.5 })
}

/// Angle θ ∈ [0, π/2] of `cos θ|01⟩ − sin θ|10⟩`, with `sin 2θ` cached.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThetaParam {
    theta: f64,
    sin2theta: f64,
}

impl ThetaParam {
    pub fn new(theta: f64) -> Result<Self> {
        check_range("theta", theta, 0.0, FRAC_PI_2, "[0, pi/2]")?;
        Ok(Self {
            theta,
            sin2theta: (2.0 * theta).sin().clamp(0.0, 1.0),
        })
    }

    /// The branch θ = asin(s)/2 ∈ [0, π/4]; `s` is kept exactly as given.
    pub fn from_sin2theta(s: f64) -> Result<Self> {
        check_range("sin2theta", s, 0.0, 1.0, "[0, 1]")?;
        Ok(Self {
            theta: 0.5 * s.asin(),
            sin2theta: s,
        })
    }

    /// The relabelled branch π/2 − θ: same `sin 2θ`, opposite `cos 2θ`.
    pub fn mirror(&self) -> Self {
        Self {
            theta: FRAC_PI_2 - self.theta,
            sin2theta: self.sin2theta,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn sin2theta(&self) -> f64 {
        self.sin2theta
    }
}

/// `cos θ|01⟩ − sin θ|10⟩`.
pub fn psi_theta(p: ThetaParam) -> PureState {
    let (s, c) = p.theta.sin_cos();
    PureState::normalized([0.0, c, -s, 0.0].map(|x| Complex64::new(x, 0.0)))
        .expect("cos/sin amplitudes have unit norm")
}

/// `(1 + x) ρ_{1/2} − x |Ψ(θ)⟩⟨Ψ(θ)|` as a raw Hermitian, unit-trace matrix.
/// It is deliberately not validated as a state: for small `x` it is
/// entangled and for large `x` it stops being positive.
pub fn pseudo_mixture(p: ThetaParam, x: f64) -> Result<ComplexMatrix> {
    PseudoMixtureFamily::new(p).at(x)
}

/// The one-parameter family `x ↦ (1 + x) ρ_{1/2} − x |Ψ(θ)⟩⟨Ψ(θ)|` at fixed θ,
/// with both endpoints precomputed for repeated evaluation.
#[derive(Clone, Debug)]
pub(crate) struct PseudoMixtureFamily {
    base: ComplexMatrix,
    projector: ComplexMatrix,
}

impl PseudoMixtureFamily {
    pub(crate) fn new(p: ThetaParam) -> Self {
        Self {
            base: rho_half().matrix,
            projector: pure_to_density(&psi_theta(p)).matrix,
        }
    }

    pub(crate) fn at(&self, x: f64) -> Result<ComplexMatrix> {
        if !(x.is_finite() && x >= 0.0) {
            return Err(Error::OutOfRange {
                name: "x",
                value: x,
                range: "[0, inf)",
            });
        }
        self.base.scale_re(1.0 + x).sub(&self.projector.scale_re(x))
    }
}

/// Coefficients of `ρ = ¼[I⊗I + Σ a_i σ_i⊗I + Σ b_i I⊗σ_i + Σ t_ij σ_i⊗σ_j]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliForm {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub t: [[f64; 3]; 3],
}

impl PauliForm {
    pub fn zero() -> Self {
        Self {
            a: [0.0; 3],
            b: [0.0; 3],
            t: [[0.0; 3]; 3],
        }
    }

    /// Largest absolute coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let flat = |f: &Self| -> Vec<f64> {
            f.a.iter()
                .chain(&f.b)
                .chain(f.t.iter().flatten())
                .copied()
                .collect()
        };
        flat(self)
            .iter()
            .zip(flat(other))
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }
}

fn pauli_string(i: usize, j: usize) -> ComplexMatrix {
    kron(&pauli(i), &pauli(j)).expect("Pauli matrices are 2x2")
}

// tr(ρ P) for Hermitian ρ and a Pauli string P is real.
fn expectation(rho: &ComplexMatrix, i: usize, j: usize) -> f64 {
    rho.matmul(&pauli_string(i, j)).expect("4x4").trace().re
}

pub fn to_pauli_form(rho: &ComplexMatrix) -> Result<PauliForm> {
    check_two_qubit(rho)?;
    check_unit_trace(rho)?;
    let rho = rho.add(&rho.adjoint())?.scale_re(0.5);
    let mut form = PauliForm::zero();
    for k in 0..3 {
        form.a[k] = expectation(&rho, k + 1, 0);
        form.b[k] = expectation(&rho, 0, k + 1);
        for l in 0..3 {
            form.t[k][l] = expectation(&rho, k + 1, l + 1);
        }
    }
    Ok(form)
}

pub fn from_pauli_form(f: &PauliForm) -> ComplexMatrix {
    let mut acc = pauli_string(0, 0);
    let mut push = |coef: f64, i: usize, j: usize| {
        if coef != 0.0 {
            acc = acc.add(&pauli_string(i, j).scale_re(coef)).expect("4x4");
        }
    };
    for k in 0..3 {
        push(f.a[k], k + 1, 0);
        push(f.b[k], 0, k + 1);
        for l in 0..3 {
            push(f.t[k][l], k + 1, l + 1);
        }
    }
    acc.scale_re(0.25)
}

/// Transpose on subsystem B: `⟨a b|ρ^{T_B}|a' b'⟩ = ⟨a b'|ρ|a' b⟩`.
pub fn partial_transpose_b(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_two_qubit(rho)?;
    ComplexMatrix::from_fn(4, |i, j| {
        let (a, b) = (i >> 1, i & 1);
        let (a2, b2) = (j >> 1, j & 1);
        rho[((a << 1) | b2, (a2 << 1) | b)]
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

/// Traces out `which`, leaving the 2×2 reduced matrix of the other qubit.
pub fn partial_trace(rho: &ComplexMatrix, which: Subsystem) -> Result<ComplexMatrix> {
    check_two_qubit(rho)?;
    rho.check_hermitian()?;
    ComplexMatrix::from_fn(2, |i, j| match which {
        Subsystem::B => rho[(i << 1, j << 1)] + rho[((i << 1) | 1, (j << 1) | 1)],
        Subsystem::A => rho[(i, j)] + rho[(2 | i, 2 | j)],
    })
}
