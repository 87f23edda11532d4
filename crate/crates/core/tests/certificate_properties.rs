use jsr_core::bounds::{jsr_estimate, lower_bound, upper_bound, EstimateConfig};
use jsr_core::certificates::{
    check_boca_new, check_polbd, convex_hull_bound_check, residual_certificate, siegel_combination, trace_bound,
    trajectory_return_search, verify_combination, CheckConfig, TrajectoryConfig, Verdict,
};
use jsr_core::matrix::vector;
use jsr_core::random::{self, complex_gaussian, gaussian_matrix, haar_unitary, unit_vector};
use jsr_core::set::{spectral_norm, spectral_radius};
use jsr_core::{ComplexMatrix, MatrixSet, NormSpec, C64, DEFAULT_WORD_CAP, TOL_REL};
use proptest::prelude::*;
use rand::Rng;

/// A contraction with a known eigenpair `(lambda, x0)`, and `x0` perturbed
/// by noise of size `delta`.
fn near_eigenpair(seed: u64, dim: usize, delta: f64) -> (ComplexMatrix, Vec<C64>, C64) {
    let mut rng = random::rng(seed);
    let q = haar_unitary(dim, &mut rng);
    let mut data = vec![C64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in i..dim {
            data[i * dim + j] = complex_gaussian(&mut rng);
        }
    }
    let t = ComplexMatrix::new(dim, data).unwrap();
    let a = q.mul(&t).mul(&q.adjoint());
    let scale = spectral_norm(&a).unwrap();
    let a = a.scale_real(1.0 / scale);
    let lambda = t.as_slice()[0] / scale;
    let x0 = q.mul_vec(&vector::basis(dim, 0));
    let noise = unit_vector(dim, &mut rng);
    let x: Vec<C64> = x0.iter().zip(&noise).map(|(p, n)| p + n * delta).collect();
    let x = vector::scale(&x, C64::new(1.0 / vector::norm2(&x), 0.0));
    (a, x, lambda)
}

fn random_set(seed: u64, dim: usize, size: usize) -> MatrixSet {
    let mut rng = random::rng(seed);
    MatrixSet::new((0..size).map(|_| gaussian_matrix(dim, &mut rng)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn residual_bound_below_spectral_radius(seed in any::<u64>(), dim in 1usize..=4, log_delta in -12.0f64..-0.5) {
        let (a, x, lambda) = near_eigenpair(seed, dim, 10f64.powf(log_delta));
        let c = residual_certificate(&a, &x, lambda, &NormSpec::Spectral).unwrap();
        let rho = spectral_radius(&a).unwrap();
        prop_assert!(c.bound <= rho * (1.0 + TOL_REL), "bound {} > Λ {rho}", c.bound);
        c.verify(1e-12).unwrap();
    }

    #[test]
    fn trace_bound_dominates(seed in any::<u64>(), dim in 1usize..=5) {
        let mut rng = random::rng(seed);
        let data = (0..dim * dim)
            .map(|_| C64::from_polar(rng.random_range(0.0..1.0), rng.random_range(0.0..std::f64::consts::TAU)))
            .collect();
        let a = ComplexMatrix::new(dim, data).unwrap();
        prop_assert!(trace_bound(&a) >= spectral_radius(&a).unwrap() * (1.0 - TOL_REL));
    }

    #[test]
    fn siegel_outputs_verify(seed in any::<u64>(), complex in any::<bool>()) {
        let mut rng = random::rng(seed);
        // Real: 3 vectors in R^1 with T = 4 (125 > 49). Complex: 6 in C^1 with
        // T = 4 (15625 > 9409).
        let (n, t, eps) = if complex { (6, 4u32, 0.5) } else { (3, 4u32, 0.5) };
        let xs: Vec<Vec<C64>> = (0..n)
            .map(|_| {
                let r = rng.random_range(0.0..1.0);
                if complex {
                    vec![C64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))]
                } else {
                    vec![C64::new(rng.random_range(-1.0..1.0) * r, 0.0)]
                }
            })
            .collect();
        let c = siegel_combination(&xs, t, eps, &NormSpec::Spectral, DEFAULT_WORD_CAP).unwrap();
        prop_assert!(verify_combination(&xs, &c, t, eps, &NormSpec::Spectral));
        prop_assert!(c.iter().any(|&v| v != 0) && c.iter().all(|v| v.unsigned_abs() <= t as u64));
    }

    #[test]
    fn checkers_never_refute(seed in any::<u64>(), dim in 1usize..=2) {
        let s = random_set(seed, dim, 2);
        let interval = jsr_estimate(&s, &EstimateConfig::new(8)).unwrap();
        let cfg = CheckConfig::default();
        let polbd = check_polbd(&s, &interval, &cfg).unwrap();
        prop_assert_ne!(polbd.verdict, Verdict::Refuted);
        let boca = check_boca_new(&s, &NormSpec::Spectral, &interval, &cfg).unwrap();
        prop_assert_ne!(boca.verdict, Verdict::Refuted);
    }
}

#[test]
fn some_residual_certificates_are_sharp() {
    let sharp = (0..200u64)
        .filter(|&seed| {
            let (a, x, lambda) = near_eigenpair(seed, 3, 1e-12);
            let c = residual_certificate(&a, &x, lambda, &NormSpec::Spectral).unwrap();
            c.bound > 0.5 * lambda.norm()
        })
        .count();
    assert!(sharp > 100, "only {sharp} of 200 certificates are informative");
}

#[test]
fn trajectory_certificates_recompute() {
    for seed in 0..12u64 {
        let s = random_set(seed, 2 + (seed as usize % 2), 2);
        let u = upper_bound(&s, 6, &NormSpec::Spectral).unwrap();
        let scaled = s.scaled(1.0 / u);
        let r = trajectory_return_search(&scaled, &NormSpec::Spectral.into(), &TrajectoryConfig::new(64).seed(seed))
            .unwrap();
        for cand in &r.candidates {
            cand.certificate.verify(TOL_REL).unwrap();
            let recomputed = scaled.eval(&cand.word).unwrap().scale_real(1.0 / cand.scale);
            assert!(recomputed.sub(&cand.certificate.a).max_abs() <= 1e-12);
            assert!(cand.certificate.holds(TOL_REL).unwrap());
        }
    }
}

#[test]
fn convex_hull_samples_respect_bound() {
    for seed in 0..20u64 {
        let s = random_set(seed, 2, 2);
        let (lower, _) = lower_bound(&s, 2).unwrap();
        let s = s.scaled(1.0 / lower.max(1e-3));
        let r = convex_hull_bound_check(&s, 1, 200, seed, DEFAULT_WORD_CAP).unwrap();
        assert_eq!(r.violations, 0, "seed {seed}: max ratio {}", r.max_ratio);
    }
}
