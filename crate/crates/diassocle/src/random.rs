//! Seeded random instances for property suites.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cochain::{Cochain, Multilinear};
use crate::linalg::{frac, int, Matrix, Scalar, Vector};

pub const DEFAULT_SEED: u64 = 0x0D1A_55C0_1E00_2024;

/// The suite seed: `DIASSOCLE_SEED` if set, otherwise [`DEFAULT_SEED`].
pub fn seed() -> u64 {
    std::env::var("DIASSOCLE_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// A generator for one named stream, derived from the suite seed.
pub fn rng(stream: u64) -> ChaCha8Rng {
    rng_from(seed(), stream)
}

pub fn rng_from(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Small integers with an occasional half, about a third of them zero.
pub fn scalar<R: Rng>(rng: &mut R) -> Scalar {
    match rng.gen_range(0..9) {
        0..=2 => Scalar::zero(),
        3 => frac(rng.gen_range(-3..=3), 2),
        _ => int(rng.gen_range(-2..=2)),
    }
}

pub fn vector<R: Rng>(rng: &mut R, n: usize) -> Vector {
    (0..n).map(|_| scalar(rng)).collect()
}

pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, scalar(rng));
        }
    }
    m
}

pub fn cochain<R: Rng>(rng: &mut R, arity: usize, src: usize, tgt: usize) -> Cochain {
    let mut c = Cochain::zero(arity, src, tgt);
    for x in c.data.iter_mut() {
        *x = scalar(rng);
    }
    c
}

pub fn multilinear<R: Rng>(rng: &mut R, dims: &[usize], tgt: usize) -> Multilinear {
    let mut m = Multilinear::zero(dims, tgt);
    for x in m.data.iter_mut() {
        *x = scalar(rng);
    }
    m
}

/// A random combination of the given vectors.
pub fn combination<R: Rng>(rng: &mut R, basis: &[Vector], dim: usize) -> Vector {
    let mut out = vec![Scalar::zero(); dim];
    for b in basis {
        let c = scalar(rng);
        crate::linalg::axpy(&mut out, &c, b);
    }
    out
}
