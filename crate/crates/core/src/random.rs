//! Seeded pseudorandom sampling of small rationals, matrices and tensors.
//!
//! Everything is driven by a ChaCha stream so runs are reproducible; the
//! `BORDER3_SEED` environment variable overrides the default seed.

use num_traits::Zero;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Matrix;
use crate::rational::{q, qf, Q};
use crate::tensor::{GLTuple, Tensor};

pub type Rng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20_170_301;

pub fn seed_from_env() -> u64 {
    std::env::var("BORDER3_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn rng(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Uniform integer in `[-bound, bound]`.
pub fn small_int(rng: &mut Rng, bound: i64) -> Q {
    q(rng.gen_range(-bound..=bound))
}

pub fn small_nonzero(rng: &mut Rng, bound: i64) -> Q {
    loop {
        let x = small_int(rng, bound);
        if !x.is_zero() {
            return x;
        }
    }
}

/// `p / d` with `|p| <= bound` and `1 <= d <= bound`.
pub fn small_rational(rng: &mut Rng, bound: i64) -> Q {
    qf(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound.max(1)))
}

pub fn random_vector(rng: &mut Rng, len: usize, bound: i64) -> Vec<Q> {
    (0..len).map(|_| small_int(rng, bound)).collect()
}

pub fn random_nonzero_vector(rng: &mut Rng, len: usize, bound: i64) -> Vec<Q> {
    loop {
        let v = random_vector(rng, len, bound);
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

pub fn random_matrix(rng: &mut Rng, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::new(rows, cols, random_vector(rng, rows * cols, bound)).expect("sizes agree")
}

pub fn random_invertible(rng: &mut Rng, d: usize, bound: i64) -> Matrix {
    loop {
        let m = random_matrix(rng, d, d, bound);
        if !m.determinant().expect("square").is_zero() {
            return m;
        }
    }
}

pub fn random_gl(rng: &mut Rng, dims: &[usize]) -> GLTuple {
    GLTuple::new(dims.iter().map(|&d| random_invertible(rng, d, 3)).collect()).expect("invertible by construction")
}

pub fn random_tensor(rng: &mut Rng, dims: &[usize], bound: i64) -> Tensor {
    let size = dims.iter().product();
    Tensor::new(dims.to_vec(), random_vector(rng, size, bound)).expect("valid dims")
}

/// Sum of `r` rank-one tensors with small rational factors.
pub fn random_rank_sum(rng: &mut Rng, dims: &[usize], r: usize, bound: i64) -> Tensor {
    let mut t = Tensor::zeros(dims.to_vec()).expect("valid dims");
    for _ in 0..r {
        let factors: Vec<Vec<Q>> =
            dims.iter().map(|&d| (0..d).map(|_| small_rational(rng, bound)).collect()).collect();
        t = t.add(&Tensor::rank_one(&factors).expect("valid dims")).expect("same dims");
    }
    t
}
