//! Built-in matrix sets with known joint spectral radius.
//!
//! The unitary families stand in for infinite sets by a finite seeded sample;
//! their spectral quantities are exact only for the sample drawn.

use crate::matrix::{ComplexMatrix, C64};
use crate::prelude::*;
use crate::random;
use crate::set::MatrixSet;
use crate::{Error, Result};

fn check_dim(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if d > crate::DEFAULT_DIM_CAP {
        return Err(Error::DimensionCap { dim: d, cap: crate::DEFAULT_DIM_CAP });
    }
    Ok(())
}

/// All `d^2` elementary matrices `E_ij`, row-major order. `rho = 1`.
pub fn elementary(d: usize) -> Result<MatrixSet> {
    check_dim(d)?;
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            out.push(ComplexMatrix::elementary(d, i, j));
        }
    }
    MatrixSet::new(out)
}

/// The cyclic shift pieces `E_{12}, E_{23}, ..., E_{d-1,d}, E_{d1}`. Every
/// product shorter than `d` is nilpotent; the full cycle has eigenvalue 1.
pub fn shift(d: usize) -> Result<MatrixSet> {
    check_dim(d)?;
    let mut out: Vec<ComplexMatrix> =
        (0..d.saturating_sub(1)).map(|i| ComplexMatrix::elementary(d, i, i + 1)).collect();
    out.push(ComplexMatrix::elementary(d, d - 1, 0));
    MatrixSet::new(out)
}

/// `1/(i+2)`, the default diagonal of the contraction in [`unitary_mix`].
pub fn default_alphas(d: usize) -> Vec<f64> {
    (0..d).map(|i| 1.0 / (i as f64 + 2.0)).collect()
}

/// `{t} ∪ U` with `t = diag(alphas)` and `U` a seeded sample of Haar
/// unitaries. Needs every `|alpha| < 1`; `rho = 1`.
pub fn unitary_mix(d: usize, alphas: &[f64], samples: usize, seed: u64) -> Result<MatrixSet> {
    check_dim(d)?;
    if alphas.len() != d {
        return Err(Error::InvalidArgument(format!("need {d} diagonal entries, got {}", alphas.len())));
    }
    if alphas.iter().any(|a| !(a.abs() < 1.0)) {
        return Err(Error::InvalidArgument("diagonal entries must lie in (-1, 1)".into()));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("at least one unitary sample is needed".into()));
    }
    let diag: Vec<C64> = alphas.iter().map(|&a| C64::new(a, 0.0)).collect();
    let mut out = vec![ComplexMatrix::diagonal(&diag)];
    let mut rng = random::rng(seed);
    out.extend((0..samples).map(|_| random::haar_unitary(d, &mut rng)));
    MatrixSet::new(out)
}

/// `{I} ∪ eps·U` for a seeded sample of Haar unitaries, `0 < eps < 1`.
/// `rho = 1`.
pub fn eps_identity(d: usize, eps: f64, samples: usize, seed: u64) -> Result<MatrixSet> {
    check_dim(d)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument("eps must lie in (0, 1)".into()));
    }
    let mut out = vec![ComplexMatrix::identity(d)];
    let mut rng = random::rng(seed);
    out.extend((0..samples).map(|_| random::haar_unitary(d, &mut rng).scale_real(eps)));
    MatrixSet::new(out)
}

/// `{[[1,1],[0,1]], [[1,0],[1,1]]}`; `rho` is the golden ratio.
pub fn unipotent_pair() -> MatrixSet {
    let a = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
    let b = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[1.0, 1.0]]).unwrap();
    MatrixSet::new(vec![a, b]).unwrap()
}

/// Rotation of the plane by `theta` radians.
pub fn rotation(theta: f64) -> ComplexMatrix {
    let (s, c) = theta.sin_cos();
    ComplexMatrix::from_real_rows(&[&[c, -s], &[s, c]]).unwrap()
}
