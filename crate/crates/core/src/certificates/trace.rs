//! Spectral radius upper bounds from power traces, and a sampler for the
//! convex-hull consequence.

use rand::Rng;

use crate::bounds::lower_bound_with_cap;
use crate::matrix::{ComplexMatrix, C64};
use crate::prelude::*;
use crate::random;
use crate::set::{self, spectral_radius, MatrixSet, NormSpec};
use crate::{Error, Result, TOL_REL};

/// `2 max_{k<=d} |tr(A^k)|^{1/k}`, an upper bound on `Λ(A)`.
pub fn trace_bound(a: &ComplexMatrix) -> f64 {
    let mut p = a.clone();
    let mut eps = 0.0f64;
    for k in 1..=a.dim() {
        if k > 1 {
            p = p.mul(a);
        }
        eps = eps.max(p.trace().norm().powf(1.0 / k as f64));
    }
    2.0 * eps
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexHullReport {
    /// `max_{k<=nd} Λ(S^k)^{1/k}`.
    pub eps: f64,
    /// `2 d eps`.
    pub bound: f64,
    pub samples: usize,
    /// Largest `Λ(a) / bound` seen (0 when `bound = 0`).
    pub max_ratio: f64,
    pub max_spectral_radius: f64,
    /// Samples whose spectral radius exceeded the bound beyond round-off.
    pub violations: usize,
}

/// Samples complex convex combinations `a` of `S ∪ ... ∪ S^n` and checks
/// `Λ(a) <= 2 d eps`.
///
/// Eigenvalues of a nearly defective matrix move by up to
/// `|a| (d u)^{1/d}` under round-off `u`, so that much absolute slack is
/// allowed on top of the relative tolerance.
pub fn convex_hull_bound_check(
    s: &MatrixSet,
    n: usize,
    samples: usize,
    seed: u64,
    cap: u64,
) -> Result<ConvexHullReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let d = s.dim();
    let (eps, _) = lower_bound_with_cap(s, n * d, cap)?;
    if eps > 1.0 + TOL_REL {
        return Err(Error::HypothesisUnmet(format!("max_(k <= nd) Λ(S^k)^(1/k) = {eps} exceeds 1")));
    }
    let bound = 2.0 * d as f64 * eps;
    let pool: Vec<ComplexMatrix> =
        set::enumerate_products(s, n, None, &NormSpec::Spectral, cap)?.map(|(_, p)| p).collect();

    let mut rng = random::rng(seed);
    let round_off = (d as f64 * f64::EPSILON).powf(1.0 / d as f64);
    let mut report = ConvexHullReport { eps, bound, samples, max_ratio: 0.0, max_spectral_radius: 0.0, violations: 0 };
    for _ in 0..samples {
        let terms = rng.random_range(1..=pool.len().min(6));
        let mut alphas: Vec<C64> = (0..terms).map(|_| random::complex_gaussian(&mut rng)).collect();
        let total: f64 = alphas.iter().map(|z| z.norm()).sum();
        if total == 0.0 {
            continue;
        }
        alphas.iter_mut().for_each(|z| *z /= total);
        let mut a = ComplexMatrix::zeros(d);
        for alpha in alphas {
            let p = &pool[rng.random_range(0..pool.len())];
            a = a.add(&p.scale(alpha));
        }
        let lam = spectral_radius(&a)?;
        report.max_spectral_radius = report.max_spectral_radius.max(lam);
        if bound > 0.0 {
            report.max_ratio = report.max_ratio.max(lam / bound);
        }
        if lam > bound * (1.0 + TOL_REL) + a.frobenius_norm() * round_off * 4.0 {
            report.violations += 1;
        }
    }
    Ok(report)
}
