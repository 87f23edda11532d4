use jsr_core::bounds::{conjugation_search, jsr_estimate, lower_bound, nilpotency_test, upper_bound, EstimateConfig};
use jsr_core::random::{self, gaussian_matrix};
use jsr_core::set::{enumerate_products, operator_norm, spectral_radius, word_count, Ellipsoid};
use jsr_core::{ComplexMatrix, MatrixSet, NormSpec, C64, DEFAULT_WORD_CAP, TOL_REL};
use proptest::prelude::*;

fn random_set(seed: u64, dim: usize, size: usize) -> MatrixSet {
    let mut rng = random::rng(seed);
    MatrixSet::new((0..size).map(|_| gaussian_matrix(dim, &mut rng)).collect()).unwrap()
}

fn norms() -> Vec<NormSpec> {
    vec![NormSpec::Spectral, NormSpec::MaxRowSum, NormSpec::MaxColSum]
}

fn shape() -> impl Strategy<Value = (u64, usize, usize)> {
    (any::<u64>(), 1usize..=3, 1usize..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sandwich_and_monotonicity((seed, dim, size) in shape()) {
        let s = random_set(seed, dim, size);
        let mut prev_lower = 0.0;
        let mut prev_upper = f64::INFINITY;
        for depth in 1..=4 {
            let (lower, _) = lower_bound(&s, depth).unwrap();
            prop_assert!(lower >= prev_lower);
            for n in norms() {
                let upper = upper_bound(&s, depth, &n).unwrap();
                prop_assert!(lower <= upper * (1.0 + TOL_REL), "{lower} > {upper} ({})", n.name());
            }
            let upper = upper_bound(&s, depth, &NormSpec::Spectral).unwrap();
            prop_assert!(upper <= prev_upper);
            prev_lower = lower;
            prev_upper = upper;
        }
    }

    #[test]
    fn scaling_equivariance((seed, dim, size) in shape(), c in 0.01f64..100.0) {
        let s = random_set(seed, dim, size);
        let cfg = EstimateConfig::new(4);
        let a = jsr_estimate(&s, &cfg).unwrap();
        let b = jsr_estimate(&s.scaled(c), &cfg).unwrap();
        prop_assert!((b.lower - c * a.lower).abs() <= 1e-9 * c * a.lower.max(1e-300) + 1e-300);
        prop_assert!((b.upper - c * a.upper).abs() <= 1e-9 * c * a.upper);
        prop_assert_eq!(a.lower_witness, b.lower_witness);
    }

    #[test]
    fn conjugation_keeps_lower_bound((seed, dim, size) in shape()) {
        let s = random_set(seed, dim, size);
        let mut rng = random::rng(seed ^ 0x5eed);
        // Well-conditioned g: identity plus a small perturbation.
        let g = ComplexMatrix::identity(dim).add(&gaussian_matrix(dim, &mut rng).scale_real(0.2));
        let conj = s.conjugated(&g).unwrap();
        let (a, _) = lower_bound(&s, 3).unwrap();
        let (b, _) = lower_bound(&conj, 3).unwrap();
        prop_assert!((a - b).abs() <= 1e-7 * a.max(1.0), "{a} vs {b}");
    }

    #[test]
    fn squared_set_interval((seed, dim, size) in (any::<u64>(), 1usize..=2, 1usize..=2)) {
        let s = random_set(seed, dim, size);
        let s2 = s.power_set(2, DEFAULT_WORD_CAP).unwrap();
        let depth = 3;
        let a = jsr_estimate(&s, &EstimateConfig::new(depth)).unwrap();
        let b = jsr_estimate(&s2, &EstimateConfig::new(depth)).unwrap();
        prop_assert!(b.lower >= a.lower * a.lower * (1.0 - 1e-9));
        prop_assert!(b.upper <= a.upper * a.upper * (1.0 + 1e-9));
    }

    #[test]
    fn conjugation_search_is_an_upper_bound((seed, dim, size) in shape()) {
        let s = random_set(seed, dim, size);
        let r = conjugation_search(&s, 20).unwrap();
        let (lower, _) = lower_bound(&s, 4).unwrap();
        let plain = upper_bound(&s, 1, &NormSpec::Spectral).unwrap();
        prop_assert!(r.value >= lower * (1.0 - 1e-9));
        prop_assert!(r.value <= plain * (1.0 + TOL_REL));
        let conj = s.conjugated(&r.g).unwrap();
        let direct = upper_bound(&conj, 1, &NormSpec::Spectral).unwrap();
        prop_assert!((direct - r.value).abs() <= 1e-8 * r.value.max(1.0));
    }

    #[test]
    fn estimate_matches_exhaustive((seed, dim, size) in shape()) {
        let s = random_set(seed, dim, size);
        let pruned = jsr_estimate(&s, &EstimateConfig::new(5)).unwrap();
        let full = jsr_estimate(&s, &EstimateConfig::new(5).exhaustive(true)).unwrap();
        prop_assert_eq!(pruned.lower, full.lower);
        prop_assert_eq!(pruned.upper, full.upper);
        prop_assert_eq!(pruned.lower_witness, full.lower_witness);
    }

    #[test]
    fn matrix_invariants(seed in any::<u64>(), dim in 1usize..=4, k in 1u32..=5) {
        let mut rng = random::rng(seed);
        let a = gaussian_matrix(dim, &mut rng);
        let b = gaussian_matrix(dim, &mut rng);
        let r = spectral_radius(&a).unwrap();
        let rk = spectral_radius(&a.pow(k)).unwrap();
        prop_assert!((r.powi(k as i32) - rk).abs() <= 1e-9 * r.powi(k as i32).max(1e-12) * 10.0);
        let g = ComplexMatrix::identity(dim).add(&gaussian_matrix(dim, &mut rng).scale_real(0.3));
        let mut all = norms();
        all.push(NormSpec::Ellipsoidal(Ellipsoid::new(g).unwrap()));
        for n in &all {
            let (na, nb) = (operator_norm(&a, n).unwrap(), operator_norm(&b, n).unwrap());
            prop_assert!(operator_norm(&a.mul(&b), n).unwrap() <= na * nb * (1.0 + TOL_REL));
            prop_assert!(r <= na * (1.0 + TOL_REL));
        }
    }

    #[test]
    fn pruned_enumeration_is_a_subset((seed, dim, size) in shape(), t in 0.1f64..2.0) {
        let s = random_set(seed, dim, size);
        let full: Vec<_> =
            enumerate_products(&s, 4, None, &NormSpec::Spectral, DEFAULT_WORD_CAP).unwrap().collect();
        prop_assert_eq!(full.len() as u128, word_count(size, 4));
        let pruned: Vec<_> =
            enumerate_products(&s, 4, Some(t), &NormSpec::Spectral, DEFAULT_WORD_CAP).unwrap().collect();
        for (w, m) in &pruned {
            let hit = full.iter().find(|(fw, _)| fw == w);
            prop_assert!(hit.is_some());
            prop_assert_eq!(&hit.unwrap().1, m);
            prop_assert!(s.eval(w).unwrap().sub(m).max_abs() <= 1e-12 * m.max_abs().max(1.0));
        }
    }
}

#[test]
fn nilpotent_sets_have_vanishing_upper_bound() {
    let mut rng = random::rng(11);
    for dim in 2..=4 {
        for _ in 0..10 {
            let members = (0..2)
                .map(|_| {
                    let mut data = vec![C64::new(0.0, 0.0); dim * dim];
                    for i in 0..dim {
                        for j in i + 1..dim {
                            data[i * dim + j] = random::complex_gaussian(&mut rng);
                        }
                    }
                    ComplexMatrix::new(dim, data).unwrap()
                })
                .collect();
            let s = MatrixSet::new(members).unwrap();
            assert!(nilpotency_test(&s).unwrap().is_nilpotent);
            assert!(upper_bound(&s, dim, &NormSpec::Spectral).unwrap() <= 1e-12);
        }
    }
}
