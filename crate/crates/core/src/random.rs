//! Seeded random sampling: Gaussians, unit vectors, Haar unitaries.
//!
//! Everything runs on `ChaCha8Rng` so a seed reproduces the same stream on
//! every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::{vector, ComplexMatrix, C64};
use crate::prelude::*;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// A standard complex Gaussian, `E|z|^2 = 1`.
pub fn complex_gaussian(rng: &mut impl Rng) -> C64 {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    C64::new(gaussian(rng) * s, gaussian(rng) * s)
}

pub fn gaussian_matrix(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_raw(dim, (0..dim * dim).map(|_| complex_gaussian(rng)).collect())
}

pub fn real_gaussian_matrix(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_raw(dim, (0..dim * dim).map(|_| C64::new(gaussian(rng), 0.0)).collect())
}

/// Uniform on the unit sphere of `C^dim`.
pub fn unit_vector(dim: usize, rng: &mut impl Rng) -> Vec<C64> {
    loop {
        let x: Vec<C64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        let n = vector::norm2(&x);
        if n > 1e-12 {
            return vector::scale(&x, C64::new(1.0 / n, 0.0));
        }
    }
}

/// Haar-distributed unitary: Gram–Schmidt on the columns of a complex
/// Gaussian matrix. The implicit `R` has a positive diagonal, which is what
/// makes the result Haar rather than merely unitary.
pub fn haar_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    loop {
        let g = gaussian_matrix(dim, rng);
        let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
        let mut ok = true;
        for j in 0..dim {
            let mut v: Vec<C64> = (0..dim).map(|i| g[(i, j)]).collect();
            // two passes keep the columns orthogonal to working precision
            for _ in 0..2 {
                for q in &cols {
                    let c = vector::inner(q, &v);
                    for (vi, qi) in v.iter_mut().zip(q) {
                        *vi -= c * qi;
                    }
                }
            }
            let n = vector::norm2(&v);
            if n < 1e-10 {
                ok = false;
                break;
            }
            cols.push(vector::scale(&v, C64::new(1.0 / n, 0.0)));
        }
        if ok {
            let mut u = ComplexMatrix::zeros(dim);
            for (j, col) in cols.iter().enumerate() {
                for (i, &z) in col.iter().enumerate() {
                    u[(i, j)] = z;
                }
            }
            return u;
        }
    }
}
