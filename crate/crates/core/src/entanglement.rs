//! Entanglement quantifiers for two qubits.
//!
//! Pure states get the concurrence `2|c0 c3 − c1 c2|` and the entropy of
//! entanglement, either directly from the reduced state or as a function of
//! the concurrence. Mixed states get the partial-transpose test and Wootters'
//! concurrence, which serve as two independent separability witnesses.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_range, Error, Result};
use crate::numerics::{
    hermitian_eigen, hermitian_eigenvalues, kron, min_eigenvalue, pauli, ComplexMatrix,
};
use crate::states::{
    check_two_qubit, check_unit_trace, partial_trace, partial_transpose_b, pure_to_density, werner,
    DensityMatrix, PureState, Subsystem, WernerParam,
};

/// Slack allowed on `c ∈ [0, 1]` before rejecting a concurrence.
const CONCURRENCE_SLACK: f64 = 1e-12;

/// Eigenvalues of ρ below this are treated as exact zeros when building the
/// spin-flip matrix, so rounding noise does not survive the square roots.
const RANK_CUTOFF: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub concurrence: f64,
    pub entanglement: f64,
}

/// `2|c0 c3 − c1 c2|`.
pub fn concurrence_pure(psi: &PureState) -> f64 {
    let [c0, c1, c2, c3] = *psi.amplitudes();
    (2.0 * (c0 * c3 - c1 * c2).norm()).min(1.0)
}

/// `h(p) = −p log₂ p − (1−p) log₂(1−p)` with `0 log 0 = 0`.
pub fn binary_entropy(p: f64) -> f64 {
    shannon_entropy(&[p, 1.0 - p])
}

fn shannon_entropy(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Entanglement of a pure state with concurrence `c`:
/// `h((1 + √(1 − c²)) / 2)`.
pub fn entanglement_from_concurrence(c: f64) -> Result<f64> {
    check_range(
        "concurrence",
        c,
        -CONCURRENCE_SLACK,
        1.0 + CONCURRENCE_SLACK,
        "[0, 1]",
    )?;
    let c = c.clamp(0.0, 1.0);
    let p = 0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt());
    Ok(binary_entropy(p))
}

/// Von Neumann entropy (bits) of the reduced state of subsystem A.
pub fn entanglement_pure_entropy(psi: &PureState) -> f64 {
    let reduced = partial_trace(pure_to_density(psi).matrix(), Subsystem::B)
        .expect("a projector is a Hermitian 4x4 matrix");
    let spectrum = hermitian_eigenvalues(&reduced).expect("2x2 Hermitian");
    shannon_entropy(&spectrum.eigenvalues)
}

pub fn entanglement_report(psi: &PureState) -> EntanglementReport {
    EntanglementReport {
        concurrence: concurrence_pure(psi),
        entanglement: entanglement_pure_entropy(psi),
    }
}

/// Smallest eigenvalue of `ρ^{T_B}`. Negative means entangled.
pub fn ppt_min_eigenvalue(rho: &ComplexMatrix) -> Result<f64> {
    check_two_qubit(rho)?;
    check_unit_trace(rho)?;
    min_eigenvalue(&partial_transpose_b(rho)?)
}

/// Peres-Horodecki test, which is exact for two qubits.
pub fn is_separable(rho: &DensityMatrix, tol: f64) -> Result<bool> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::InvalidOption(format!(
            "separability tolerance must be >= 0, got {tol}"
        )));
    }
    Ok(ppt_min_eigenvalue(rho.matrix())? >= -tol)
}

/// Wootters' concurrence `max(0, √μ₁ − √μ₂ − √μ₃ − √μ₄)`, μ the descending
/// eigenvalues of `ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`.
///
/// With `ρ = W W†` and `W = V diag(√p)` from the eigendecomposition of ρ,
/// the non-Hermitian product has the same spectrum as the Hermitian PSD
/// matrix `W† ρ̃ W`, which is what gets diagonalized.
pub fn wootters_concurrence_mixed(rho: &DensityMatrix) -> Result<f64> {
    let m = rho.matrix();
    let yy = kron(&pauli(2), &pauli(2))?;
    let flipped = yy.matmul(&m.conj())?.matmul(&yy)?;

    let eig = hermitian_eigen(m)?;
    let columns: Vec<Vec<Complex64>> = eig
        .result
        .eigenvalues
        .iter()
        .zip(&eig.vectors)
        .map(|(&p, v)| {
            let w = if p > RANK_CUTOFF { p.sqrt() } else { 0.0 };
            v.iter().map(|z| z * w).collect()
        })
        .collect();
    let flipped_cols: Vec<Vec<Complex64>> = columns.iter().map(|c| flipped.apply(c)).collect();
    let gram = ComplexMatrix::from_fn(4, |k, l| {
        columns[k]
            .iter()
            .zip(&flipped_cols[l])
            .map(|(a, b)| a.conj() * b)
            .sum()
    })?;

    let mut roots: Vec<f64> = hermitian_eigenvalues(&gram)?
        .eigenvalues
        .into_iter()
        .map(|mu| mu.max(0.0).sqrt())
        .collect();
    roots.sort_by(|a, b| b.total_cmp(a));
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).clamp(0.0, 1.0))
}

/// Bisects the Werner weight ε at which the partial transpose of
/// `werner(ε)` stops being positive; iterates until the bracket is narrower
/// than `resolution`.
pub fn werner_separability_boundary(resolution: f64) -> Result<f64> {
    if resolution.is_nan() || resolution <= 0.0 {
        return Err(Error::InvalidOption(format!(
            "resolution must be positive, got {resolution}"
        )));
    }
    let margin =
        |eps: f64| -> Result<f64> { ppt_min_eigenvalue(werner(WernerParam::new(eps)?).matrix()) };
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while hi - lo > resolution {
        let mid = 0.5 * (lo + hi);
        if margin(mid)? >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `(1 − λ) · E(ψ)` with E the entropy of entanglement.
pub fn ls_entanglement_measure(lambda: f64, psi: &PureState) -> Result<f64> {
    check_range("lambda", lambda, 0.0, 1.0, "[0, 1]")?;
    Ok((1.0 - lambda) * entanglement_pure_entropy(psi))
}
