//! Small dense complex matrices and a Hermitian eigensolver.
//!
//! Matrices here are at most 4×4, so everything is stored row-major in a flat
//! `Vec` and computed directly. The eigensolver runs cyclic Jacobi on the real
//! symmetric embedding `[[Re M, -Im M], [Im M, Re M]]`, whose spectrum is the
//! spectrum of `M` with every eigenvalue doubled.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

/// Entrywise tolerance on `|M - M†|` for a matrix to count as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Default slack on the minimum eigenvalue when testing positivity.
pub const DEFAULT_PSD_TOL: f64 = 1e-9;
/// Largest accepted eigen-residual `max ‖Mv − λv‖`, relative to `max(1, ‖M‖_F)`.
pub const EIGEN_RESIDUAL_BOUND: f64 = 1e-10;

const MAX_SWEEPS: usize = 64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense square complex matrix of dimension 2, 3 or 4.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

fn check_dim(dim: usize) -> Result<()> {
    if (2..=4).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: vec![ZERO; dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        Ok(m)
    }

    /// Real diagonal matrix.
    pub fn diag(values: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(values.len())?;
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m.check_finite()?;
        Ok(m)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        check_dim(dim)?;
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        let m = Self { dim, data };
        m.check_finite()?;
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        check_dim(dim)?;
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a {dim}x{dim} matrix",
                bad.len()
            )));
        }
        let m = Self {
            dim,
            data: rows.into_iter().flatten().collect(),
        };
        m.check_finite()?;
        Ok(m)
    }

    /// Rank-one matrix `|u⟩⟨v|`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "outer product of lengths {} and {}",
                u.len(),
                v.len()
            )));
        }
        Self::from_fn(u.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.data.chunks(self.dim)
    }

    fn check_finite(&self) -> Result<()> {
        if self
            .data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            Ok(())
        } else {
            Err(Error::NonFinite)
        }
    }

    fn same_dim(&self, other: &Self, op: &str) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{op} of {}x{} and {}x{}",
                self.dim, self.dim, other.dim, other.dim
            )))
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other, "sum")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other, "difference")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other, "product")?;
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Ok(Self { dim: n, data: out })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = self.data[j * n + i].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = self.data[j * n + i];
            }
        }
        out
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// `max |M_ij - conj(M_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn check_hermitian(&self) -> Result<()> {
        let asymmetry = self.hermiticity_defect();
        if asymmetry <= HERMITIAN_TOL {
            Ok(())
        } else {
            Err(Error::NotHermitian { asymmetry })
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.same_dim(other, "comparison")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// All imaginary parts are exactly zero.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.rows()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row
                .iter()
                .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                .collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

// Serialized as nested rows of `[re, im]` pairs.
impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = self
            .rows()
            .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(deserializer)?;
        let rows = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|[re, im]| Complex64::new(re, im))
                    .collect()
            })
            .collect();
        ComplexMatrix::from_rows(rows).map_err(de::Error::custom)
    }
}

/// Pauli matrix `σ_k` for k = 0 (identity), 1, 2, 3.
pub fn pauli(k: usize) -> ComplexMatrix {
    let rows = match k {
        0 => [[ONE, ZERO], [ZERO, ONE]],
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => panic!("no Pauli matrix with index {k}"),
    };
    ComplexMatrix {
        dim: 2,
        data: rows.into_iter().flatten().collect(),
    }
}

/// Kronecker product of two 2×2 matrices; the first factor is the left
/// (subsystem A) index, so the basis order is |00⟩, |01⟩, |10⟩, |11⟩.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.dim != 2 || b.dim != 2 {
        return Err(Error::DimensionMismatch(format!(
            "kron expects 2x2 factors, got {}x{} and {}x{}",
            a.dim, a.dim, b.dim, b.dim
        )));
    }
    ComplexMatrix::from_fn(4, |i, j| a[(i >> 1, j >> 1)] * b[(i & 1, j & 1)])
}

pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    Ok(a.sub(b)?.frobenius_norm())
}

/// Spectrum of a Hermitian matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// `max_k ‖M v_k − λ_k v_k‖` over the computed eigenpairs.
    pub residual: f64,
}

/// Eigenvalues plus orthonormal eigenvectors, sorted ascending.
#[derive(Clone, Debug)]
pub(crate) struct EigenDecomposition {
    pub result: EigenResult,
    pub vectors: Vec<Vec<Complex64>>,
}

/// In-place cyclic Jacobi on a dense real symmetric `n×n` matrix.
///
/// Returns the diagonal (unsorted eigenvalues); if `vectors` is given it is
/// overwritten with the accumulated rotations, column `k` pairing with
/// eigenvalue `k`.
fn jacobi_symmetric(a: &mut [f64], n: usize, mut vectors: Option<&mut [f64]>) -> Result<Vec<f64>> {
    if let Some(v) = vectors.as_deref_mut() {
        v.iter_mut().for_each(|x| *x = 0.0);
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
    }

    for sweep in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q].abs())
            .sum();
        if off == 0.0 {
            return Ok((0..n).map(|i| a[i * n + i]).collect());
        }

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                // Once past the first few sweeps, drop elements that can no
                // longer change either diagonal entry.
                let g = 100.0 * apq.abs();
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }

                let h = aqq - app;
                let t = if h.abs() + g == h.abs() {
                    apq / h
                } else {
                    let theta = 0.5 * h / apq;
                    let t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                if let Some(v) = vectors.as_deref_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    Err(Error::Inaccurate {
        residual: f64::INFINITY,
    })
}

// Uses the Hermitian part (M + M†)/2 so the embedding is exactly symmetric.
fn real_embedding(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.dim;
    let w = 2 * n;
    let mut a = vec![0.0; w * w];
    for i in 0..n {
        for j in 0..n {
            let z = 0.5 * (m[(i, j)] + m[(j, i)].conj());
            a[i * w + j] = z.re;
            a[i * w + j + n] = -z.im;
            a[(i + n) * w + j] = z.im;
            a[(i + n) * w + j + n] = z.re;
        }
    }
    a
}

/// Each eigenvalue of `M` shows up twice in the embedding; average the pairs.
fn deduplicate_pairs(mut doubled: Vec<f64>) -> Vec<f64> {
    doubled.sort_by(f64::total_cmp);
    doubled.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect()
}

fn residual_of(m: &ComplexMatrix, value: f64, v: &[Complex64]) -> f64 {
    m.apply(v)
        .iter()
        .zip(v)
        .map(|(mv, vi)| (mv - vi * value).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn dot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub(crate) fn hermitian_eigen(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    m.check_hermitian()?;
    let n = m.dim;
    let w = 2 * n;
    let mut a = real_embedding(m);
    let mut v = vec![0.0; w * w];
    let doubled = jacobi_symmetric(&mut a, w, Some(&mut v))?;
    let eigenvalues = deduplicate_pairs(doubled);

    // Map each real eigenvector (u; w) to u + i w, then pick an orthonormal
    // complex basis by pivoted Gram-Schmidt (largest remaining residual first).
    let mut candidates: Vec<Vec<Complex64>> = (0..w)
        .map(|col| {
            (0..n)
                .map(|r| Complex64::new(v[r * w + col], v[(r + n) * w + col]))
                .collect()
        })
        .collect();
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while basis.len() < n {
        let (best, norm) = candidates
            .iter()
            .enumerate()
            .map(|(i, c)| (i, dot(c, c).re.sqrt()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("candidates are never exhausted before the basis is complete");
        let chosen: Vec<Complex64> = candidates
            .swap_remove(best)
            .iter()
            .map(|z| z / norm)
            .collect();
        for c in candidates.iter_mut() {
            let overlap = dot(&chosen, c);
            c.iter_mut()
                .zip(&chosen)
                .for_each(|(ci, bi)| *ci -= bi * overlap);
        }
        basis.push(chosen);
    }
    basis.sort_by(|x, y| dot(x, &m.apply(x)).re.total_cmp(&dot(y, &m.apply(y)).re));

    let residual = eigenvalues
        .iter()
        .zip(&basis)
        .map(|(&value, vec)| residual_of(m, value, vec))
        .fold(0.0, f64::max);
    if residual > EIGEN_RESIDUAL_BOUND * m.frobenius_norm().max(1.0) {
        return Err(Error::Inaccurate { residual });
    }
    Ok(EigenDecomposition {
        result: EigenResult {
            eigenvalues,
            residual,
        },
        vectors: basis,
    })
}

/// All eigenvalues of a Hermitian matrix in ascending order, with the
/// eigenpair residual.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<EigenResult> {
    hermitian_eigen(m).map(|d| d.result)
}

/// Smallest eigenvalue only. Skips eigenvector accumulation, so this is the
/// fast path used inside the decomposition solver.
pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    m.check_hermitian()?;
    let values = if m.is_real() {
        // The embedding of a real matrix is block-diagonal with two copies of
        // it, so one copy carries the whole spectrum.
        let n = m.dim;
        let mut a: Vec<f64> = (0..n * n)
            .map(|k| 0.5 * (m.data[k].re + m.data[(k % n) * n + k / n].re))
            .collect();
        jacobi_symmetric(&mut a, n, None)?
    } else {
        let mut a = real_embedding(m);
        deduplicate_pairs(jacobi_symmetric(&mut a, 2 * m.dim, None)?)
    };
    Ok(values.into_iter().fold(f64::INFINITY, f64::min))
}

pub fn is_psd(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::InvalidOption(format!(
            "PSD tolerance must be >= 0, got {tol}"
        )));
    }
    Ok(min_eigenvalue(m)? >= -tol)
}
