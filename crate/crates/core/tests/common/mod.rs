#![allow(dead_code)]

use lsd_core::states::PureState;
use lsd_core::{ComplexMatrix, DensityMatrix};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// `(G + G†) / 2` with standard complex Gaussian entries.
pub fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| gaussian(rng)).unwrap();
    g.add(&g.adjoint()).unwrap().scale_re(0.5)
}

pub fn random_pure(rng: &mut ChaCha8Rng) -> PureState {
    PureState::normalized([gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng)]).unwrap()
}

/// `G G† / tr` for a 4×`rank` complex Gaussian `G`.
pub fn random_density(rng: &mut ChaCha8Rng, rank: usize) -> DensityMatrix {
    let cols: Vec<[Complex64; 4]> = (0..rank)
        .map(|_| [gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng)])
        .collect();
    let m =
        ComplexMatrix::from_fn(4, |i, j| cols.iter().map(|c| c[i] * c[j].conj()).sum()).unwrap();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_re(1.0 / tr)).unwrap()
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
