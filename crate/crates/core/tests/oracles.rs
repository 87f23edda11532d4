//! Reference values checked against independent computations: closed forms
//! and plain brute force written here without the library's enumeration.

use jsr_core::bounds::{
    barabanov_approx, conjugation_search, jsr_estimate, lower_bound, nilpotency_test, rota_strang_norm, upper_bound,
    EstimateConfig,
};
use jsr_core::certificates::{residual_certificate, siegel_search, verify_combination};
use jsr_core::families;
use jsr_core::matrix::vector;
use jsr_core::set::{enumerate_products, operator_norm, set_norm, spectral_radius};
use jsr_core::{ComplexMatrix, MatrixSet, NormSpec, Word, C64, DEFAULT_WORD_CAP};

const PHI: f64 = 1.618_033_988_749_895;

type M2 = [[f64; 2]; 2];

fn mul2(a: &M2, b: &M2) -> M2 {
    let mut c = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

/// Largest singular value of a real 2x2 matrix in closed form.
fn sigma_max(a: &M2) -> f64 {
    let f = a.iter().flatten().map(|x| x * x).sum::<f64>();
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    ((f + (f * f - 4.0 * det * det).max(0.0).sqrt()) / 2.0).sqrt()
}

/// Every product of length `k`, brute force, in the `M[ik] ... M[i1]` order.
fn products2(members: &[M2], k: usize) -> Vec<(Vec<usize>, M2)> {
    let mut level = vec![(Vec::new(), [[1.0, 0.0], [0.0, 1.0]])];
    for _ in 0..k {
        let mut next = Vec::new();
        for (w, p) in &level {
            for (i, m) in members.iter().enumerate() {
                let mut w2 = w.clone();
                w2.push(i);
                next.push((w2, mul2(m, p)));
            }
        }
        level = next;
    }
    level
}

const UNIPOTENT: [M2; 2] = [[[1.0, 1.0], [0.0, 1.0]], [[1.0, 0.0], [1.0, 1.0]]];

#[test]
fn unipotent_upper_bound_matches_brute_force() {
    let oracle = (1..=12)
        .map(|k| {
            let worst = products2(&UNIPOTENT, k).iter().map(|(_, p)| sigma_max(p)).fold(0.0, f64::max);
            worst.powf(1.0 / k as f64)
        })
        .fold(f64::INFINITY, f64::min);
    let s = families::unipotent_pair();
    let upper = upper_bound(&s, 12, &NormSpec::Spectral).unwrap();
    assert!((upper - oracle).abs() <= 1e-9 * oracle, "{upper} vs {oracle}");
    assert!((1.6180..=1.90).contains(&upper));
}

#[test]
fn unipotent_lower_bound_closed_form() {
    // eval((0,1)) = M1 M0 = [[1,1],[1,2]], char poly t^2 - 3t + 1.
    let p = mul2(&UNIPOTENT[1], &UNIPOTENT[0]);
    assert_eq!(p, [[1.0, 1.0], [1.0, 2.0]]);
    let root = ((3.0 + 5f64.sqrt()) / 2.0).sqrt();
    let (v, w) = lower_bound(&families::unipotent_pair(), 2).unwrap();
    assert!((v - root).abs() <= 1e-9 * root && (root - PHI).abs() < 1e-12);
    assert_eq!(w.indices(), &[0, 1]);
}

#[test]
fn spectral_radius_examples() {
    let fib = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 0.0]]).unwrap();
    assert!((spectral_radius(&fib).unwrap() - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
    let d = ComplexMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, -3.0]]).unwrap();
    assert!((spectral_radius(&d).unwrap() - 3.0).abs() < 1e-12);
    assert_eq!(spectral_radius(&ComplexMatrix::elementary(2, 0, 1)).unwrap(), 0.0);
}

#[test]
fn norm_examples() {
    let a = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap();
    assert_eq!(operator_norm(&a, &NormSpec::MaxRowSum).unwrap(), 2.0);
    let d = ComplexMatrix::from_real_rows(&[&[3.0, 0.0], &[0.0, 1.0]]).unwrap();
    assert!((operator_norm(&d, &NormSpec::Spectral).unwrap() - 3.0).abs() < 1e-12);
    let pair = MatrixSet::new(vec![ComplexMatrix::identity(2), ComplexMatrix::identity(2).scale_real(2.0)]).unwrap();
    assert!((set_norm(&pair, &NormSpec::Spectral).unwrap() - 2.0).abs() < 1e-12);
    assert!((set_norm(&families::shift(3).unwrap(), &NormSpec::Spectral).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn elementary_pair_products() {
    let s = MatrixSet::new(vec![ComplexMatrix::elementary(2, 0, 1), ComplexMatrix::elementary(2, 1, 0)]).unwrap();
    let all: Vec<_> = enumerate_products(&s, 2, None, &NormSpec::Spectral, DEFAULT_WORD_CAP).unwrap().collect();
    assert_eq!(all.len(), 6);
    let (_, p) = all.iter().find(|(w, _)| w.indices() == [0, 1]).unwrap();
    assert_eq!(*p, ComplexMatrix::elementary(2, 1, 1));
    // Every product has norm 0 or 1, so the upper bound is 1 at any depth.
    assert!((upper_bound(&s, 4, &NormSpec::Spectral).unwrap() - 1.0).abs() < 1e-12);
    let zero = MatrixSet::new(vec![ComplexMatrix::zeros(2)]).unwrap();
    assert_eq!(enumerate_products(&zero, 2, Some(0.5), &NormSpec::Spectral, DEFAULT_WORD_CAP).unwrap().count(), 0);
}

#[test]
fn shift_family_levels() {
    for d in 2..=4 {
        let s = families::shift(d).unwrap();
        for depth in 1..d {
            assert_eq!(lower_bound(&s, depth).unwrap().0, 0.0, "d = {d}, depth = {depth}");
        }
        let (v, w) = lower_bound(&s, d).unwrap();
        assert!((v - 1.0).abs() <= 1e-9);
        assert_eq!(w.len(), d);
        // The witness is a cyclic word: every letter once.
        let mut letters = w.indices().to_vec();
        letters.sort_unstable();
        assert_eq!(letters, (0..d).collect::<Vec<_>>());
    }
}

#[test]
fn estimate_examples() {
    let diag = MatrixSet::new(vec![ComplexMatrix::from_real_rows(&[&[0.5, 0.0], &[0.0, 1.0 / 3.0]]).unwrap()]).unwrap();
    let r = jsr_estimate(&diag, &EstimateConfig::new(1)).unwrap();
    assert!((r.lower - 0.5).abs() < 1e-12 && (r.upper - 0.5).abs() < 1e-12);

    let r = jsr_estimate(&families::elementary(2).unwrap(), &EstimateConfig::new(4)).unwrap();
    assert!(r.contains(1.0, 1e-12) && r.width() <= 1e-9);

    let nil = MatrixSet::new(vec![ComplexMatrix::elementary(2, 0, 1), ComplexMatrix::zeros(2)]).unwrap();
    let r = jsr_estimate(&nil, &EstimateConfig::new(2)).unwrap();
    assert_eq!(r.lower, 0.0);
    assert!(r.upper <= 1e-9);
}

#[test]
fn conjugation_against_explicit_scaling() {
    let a = ComplexMatrix::from_real_rows(&[&[1.0, 100.0], &[0.0, 0.5]]).unwrap();
    // Oracle: conjugating by diag(1e-3, 1) gives [[1, 0.1], [0, 0.5]].
    let explicit = sigma_max(&[[1.0, 0.1], [0.0, 0.5]]);
    assert!(explicit < 1.1);
    let r = conjugation_search(&MatrixSet::new(vec![a]).unwrap(), 100).unwrap();
    assert!(r.value <= 1.5, "{}", r.value);
    assert!(r.value >= 1.0 - 1e-9);

    let d = ComplexMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 0.5]]).unwrap();
    let r = conjugation_search(&MatrixSet::new(vec![d]).unwrap(), 50).unwrap();
    assert!((r.value - 2.0).abs() < 1e-9);
}

#[test]
fn rota_strang_alternating_pair() {
    // |S^n e1| = 1 for every n, so the series is sum 2^-n = 2.
    let s = MatrixSet::new(vec![ComplexMatrix::elementary(2, 0, 1), ComplexMatrix::elementary(2, 1, 0)]).unwrap();
    let trunc = 20;
    let oracle: f64 = (0..=trunc).map(|n| 0.5f64.powi(n)).sum();
    let r = rota_strang_norm(&s, 0.5, &vector::basis(2, 0), trunc as usize, DEFAULT_WORD_CAP).unwrap();
    assert!((r.value - oracle).abs() < 1e-12);
    assert!(r.tail <= 0.5f64.powi(trunc - 1) + 1e-15);
}

/// `max_{|w| <= depth} |eval(w) x|_2 / rho^|w|`, with the empty word included.
fn barabanov_oracle(members: &[M2], rho: f64, depth: usize, x: [f64; 2]) -> f64 {
    let mut best = (x[0] * x[0] + x[1] * x[1]).sqrt();
    for k in 1..=depth {
        for (_, p) in products2(members, k) {
            let y = [p[0][0] * x[0] + p[0][1] * x[1], p[1][0] * x[0] + p[1][1] * x[1]];
            best = best.max((y[0] * y[0] + y[1] * y[1]).sqrt() / rho.powi(k as i32));
        }
    }
    best
}

#[test]
fn barabanov_slack_on_direction_grid() {
    let s = families::unipotent_pair();
    let norm = barabanov_approx(&s, PHI, 8).unwrap();
    let mut slack: f64 = 0.0;
    for t in 0..360 {
        let a = (t as f64).to_radians();
        let x = [a.cos(), a.sin()];
        let vx = barabanov_oracle(&UNIPOTENT, PHI, 8, x);
        let lib = norm.eval(&[C64::new(x[0], 0.0), C64::new(x[1], 0.0)]);
        assert!((lib - vx).abs() <= 1e-9 * vx, "{lib} vs {vx}");
        for m in &UNIPOTENT {
            let y = [m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]];
            slack = slack.max(barabanov_oracle(&UNIPOTENT, PHI, 8, y) / (PHI * vx) - 1.0);
        }
    }
    assert!(slack <= 0.05, "{slack}");
    assert!(norm.slack() <= 0.05);
}

#[test]
fn nilpotency_examples() {
    let r = nilpotency_test(&MatrixSet::new(vec![ComplexMatrix::elementary(2, 0, 1)]).unwrap()).unwrap();
    assert_eq!((r.is_nilpotent, r.algebra_dim), (true, 1));
    let pair = MatrixSet::new(vec![ComplexMatrix::elementary(2, 0, 1), ComplexMatrix::elementary(2, 1, 0)]).unwrap();
    let r = nilpotency_test(&pair).unwrap();
    assert_eq!((r.is_nilpotent, r.algebra_dim), (false, 4));
    let upper = MatrixSet::new(vec![ComplexMatrix::elementary(3, 0, 1), ComplexMatrix::elementary(3, 1, 2)]).unwrap();
    let r = nilpotency_test(&upper).unwrap();
    assert!(r.is_nilpotent && r.algebra_dim <= 3);
}

#[test]
fn residual_clamp_example() {
    let a = ComplexMatrix::from_real_rows(&[&[0.9, 0.0], &[0.0, 0.1]]).unwrap();
    let c = residual_certificate(&a, &vector::basis(2, 0), C64::new(1.0, 0.0), &NormSpec::Spectral).unwrap();
    assert!((c.residual - 0.1).abs() < 1e-12);
    assert!((c.eps - 0.1f64.sqrt()).abs() < 1e-12);
    assert_eq!(c.bound, 0.0);
}

#[test]
fn siegel_small_example_against_brute_force() {
    let xs: Vec<Vec<C64>> = [1.0, 0.5, 1.0 / 3.0].iter().map(|&v| vec![C64::new(v, 0.0)]).collect();
    let (t, eps) = (2u32, 1.0 / 3.0);
    let mut brute = Vec::new();
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for c in -2i64..=2 {
                let r = (a as f64 + b as f64 * 0.5 + c as f64 / 3.0).abs();
                if (a, b, c) != (0, 0, 0) && r <= eps + 1e-12 {
                    brute.push([a, b, c]);
                }
            }
        }
    }
    assert!(brute.contains(&[1, -2, 0]));
    let found = siegel_search(&xs, t, eps, &NormSpec::Spectral, DEFAULT_WORD_CAP).unwrap().unwrap();
    assert!(verify_combination(&xs, &found, t, eps, &NormSpec::Spectral));
    assert!(brute.iter().any(|c| c[..] == found[..]));
}

#[test]
fn witness_reproduces_lower_bound() {
    for s in [families::unipotent_pair(), families::shift(3).unwrap(), families::elementary(2).unwrap()] {
        let r = jsr_estimate(&s, &EstimateConfig::new(6)).unwrap();
        let w: &Word = &r.lower_witness;
        let v = spectral_radius(&s.eval(w).unwrap()).unwrap().powf(1.0 / w.len() as f64);
        assert!((v - r.lower).abs() <= 1e-9 * r.lower.max(1.0));
    }
}
