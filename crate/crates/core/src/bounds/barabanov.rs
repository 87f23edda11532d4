//! Finite-depth approximation of a Barabanov norm.
//!
//! `v(x) = max_{k<=depth} max_{|w|=k} |eval(w) x|_2 / rho_hat^k`, with the
//! empty word contributing `|x|_2`. A true Barabanov norm satisfies
//! `max_s v(s x) = rho v(x)`; here the defect from that identity is measured
//! on a sample of directions and reported as `slack`.

use crate::matrix::{vector, ComplexMatrix, C64};
use crate::prelude::*;
use crate::random;
use crate::set::{self, MatrixSet, NormSpec};
use crate::{Error, Result, DEFAULT_WORD_CAP};

/// Directions sampled for the slack when the set is real and `d = 2`.
const GRID_POINTS: usize = 360;
/// Random directions per dimension otherwise.
const SAMPLES_PER_DIM: usize = 256;

/// The approximate Barabanov norm, stored as its scaled product matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct PolytopeNorm {
    dim: usize,
    rho_hat: f64,
    depth: usize,
    /// `eval(w) / rho_hat^|w|` for every retained word, identity first.
    products: Vec<ComplexMatrix>,
    slack: f64,
}

impl PolytopeNorm {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho_hat(&self) -> f64 {
        self.rho_hat
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Number of stored scaled products (including the identity).
    pub fn size(&self) -> usize {
        self.products.len()
    }

    /// `max_s v(s x) / (rho_hat v(x)) - 1`, maximized over sampled directions.
    pub fn slack(&self) -> f64 {
        self.slack
    }

    /// Evaluates the norm. Positive for nonzero `x` since the identity is
    /// among the stored products.
    pub fn eval(&self, x: &[C64]) -> f64 {
        self.products.iter().map(|m| vector::norm2(&m.mul_vec(x))).fold(0.0, f64::max)
    }

    /// Induced operator norm of `a`, estimated from below on sample
    /// directions. Exact only in the limit of dense sampling.
    pub fn operator_norm_sampled(&self, a: &ComplexMatrix, directions: &[Vec<C64>]) -> f64 {
        directions
            .iter()
            .map(|x| {
                let v = self.eval(x);
                if v > 0.0 {
                    self.eval(&a.mul_vec(x)) / v
                } else {
                    0.0
                }
            })
            .fold(0.0, f64::max)
    }
}

/// Sample directions used for the slack: a uniform angle grid on the real
/// circle when `real_plane`, otherwise seeded random complex unit vectors.
pub fn sample_directions(dim: usize, real_plane: bool, seed: u64) -> Vec<Vec<C64>> {
    if real_plane && dim == 2 {
        return (0..GRID_POINTS)
            .map(|i| {
                let t = core::f64::consts::TAU * i as f64 / GRID_POINTS as f64;
                let (s, c) = t.sin_cos();
                vec![C64::new(c, 0.0), C64::new(s, 0.0)]
            })
            .collect();
    }
    let mut rng = random::rng(seed);
    (0..SAMPLES_PER_DIM * dim).map(|_| random::unit_vector(dim, &mut rng)).collect()
}

/// Builds the approximation with the default cap and sampling seed 0.
pub fn barabanov_approx(s: &MatrixSet, rho_hat: f64, depth: usize) -> Result<PolytopeNorm> {
    barabanov_approx_with(s, rho_hat, depth, DEFAULT_WORD_CAP, 0)
}

pub fn barabanov_approx_with(s: &MatrixSet, rho_hat: f64, depth: usize, cap: u64, seed: u64) -> Result<PolytopeNorm> {
    if !(rho_hat > 0.0 && rho_hat.is_finite()) {
        return Err(Error::InvalidArgument("rho_hat must be positive".into()));
    }
    let mut products = vec![ComplexMatrix::identity(s.dim())];
    let mut scale = vec![1.0f64];
    for k in 1..=depth {
        scale.push(scale[k - 1] / rho_hat);
    }
    for (w, p) in set::enumerate_products(s, depth, None, &NormSpec::Spectral, cap)? {
        let m = p.scale_real(scale[w.len()]);
        if m.max_abs() == 0.0 || products.contains(&m) {
            continue;
        }
        products.push(m);
    }
    let mut norm = PolytopeNorm { dim: s.dim(), rho_hat, depth, products, slack: 0.0 };

    let directions = sample_directions(s.dim(), s.is_real(), seed);
    let mut slack = f64::NEG_INFINITY;
    for x in &directions {
        let vx = norm.eval(x);
        let best = s.members().iter().map(|m| norm.eval(&m.mul_vec(x))).fold(0.0, f64::max);
        slack = slack.max(best / (rho_hat * vx) - 1.0);
    }
    norm.slack = slack;
    Ok(norm)
}
