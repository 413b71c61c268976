//! Seeded random inputs for suites and tests.

use crate::tensors::{Mat4, C64};
use nalgebra::{SMatrix, SVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Real and imaginary parts uniform on [-1, 1).
pub fn complex(rng: &mut Rng64) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn real(rng: &mut Rng64) -> f64 {
    rng.gen_range(-1.0..1.0)
}

pub fn matrix<const R: usize, const C: usize>(rng: &mut Rng64) -> SMatrix<C64, R, C> {
    SMatrix::from_fn(|_, _| complex(rng))
}

pub fn vector<const N: usize>(rng: &mut Rng64) -> SVector<C64, N> {
    SVector::from_fn(|_, _| complex(rng))
}

pub fn real_matrix<const R: usize, const C: usize>(rng: &mut Rng64) -> SMatrix<C64, R, C> {
    SMatrix::from_fn(|_, _| C64::new(real(rng), 0.0))
}

/// Random complex antisymmetric 4x4.
pub fn antisymmetric4(rng: &mut Rng64) -> Mat4 {
    let m: Mat4 = matrix(rng);
    (m - m.transpose()) * C64::new(0.5, 0.0)
}

/// Random traceless 4x4.
pub fn traceless4(rng: &mut Rng64) -> Mat4 {
    let mut m: Mat4 = matrix(rng);
    let t = m.trace() / 4.0;
    for k in 0..4 {
        m[(k, k)] -= t;
    }
    m
}

/// Random 4x4 with unit determinant, drawn away from singular matrices.
pub fn special_linear4(rng: &mut Rng64) -> Mat4 {
    loop {
        let mut m: Mat4 = matrix(rng);
        for k in 0..4 {
            m[(k, k)] += C64::new(1.5, 0.0);
        }
        let d = m.determinant();
        if d.norm() > 0.1 {
            return m / d.powf(0.25);
        }
    }
}
