//! Search for a conjugation `g` that shrinks `|g S g^-1|_2`.
//!
//! Any invertible `g` gives the upper bound `rho(S) <= |g S g^-1|_2`, and
//! some `g` brings it within a factor `d` of `rho`. The search alternates two
//! cheap moves and keeps the best `g` seen, so it never does worse than the
//! identity:
//!
//! - diagonal rescaling, one coordinate at a time by powers of 2;
//! - an ellipsoid step `P <- (1-eta) P + eta * mean(s^H P s)`, trace
//!   normalized, with `g` the Cholesky factor of `P`.

use crate::matrix::ComplexMatrix;
use crate::set::{spectral_norm, MatrixSet};
use crate::Result;

const ETA: f64 = 0.1;
const BASE: f64 = 2.0;
const MAX_SCALING_STEPS: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct ConjugationResult {
    pub g: ComplexMatrix,
    /// `|g S g^-1|_2`, an upper bound on `rho(S)`.
    pub value: f64,
    /// `|S|_2`, the value at `g = I`.
    pub initial: f64,
}

fn conjugated_norm(s: &MatrixSet, g: &ComplexMatrix) -> Option<f64> {
    let g_inv = g.inverse().ok()?;
    let mut worst = 0.0f64;
    for m in s.members() {
        worst = worst.max(spectral_norm(&g.mul(m).mul(&g_inv)).ok()?);
    }
    worst.is_finite().then_some(worst)
}

fn scale_row(g: &ComplexMatrix, i: usize, c: f64) -> ComplexMatrix {
    let mut out = g.clone();
    for j in 0..g.dim() {
        out[(i, j)] *= c;
    }
    out
}

/// Greedy coordinate rescaling of `g` on the left by `BASE^{±1}`.
fn diagonal_pass(s: &MatrixSet, g: &ComplexMatrix, value: f64) -> (ComplexMatrix, f64) {
    let mut g = g.clone();
    let mut value = value;
    for i in 0..s.dim() {
        for c in [1.0 / BASE, BASE] {
            for _ in 0..MAX_SCALING_STEPS {
                let cand = scale_row(&g, i, c);
                match conjugated_norm(s, &cand) {
                    Some(v) if v < value => {
                        g = cand;
                        value = v;
                    }
                    _ => break,
                }
            }
        }
    }
    (g, value)
}

fn ellipsoid_step(s: &MatrixSet, p: &ComplexMatrix) -> ComplexMatrix {
    let d = s.dim();
    let mut avg = ComplexMatrix::zeros(d);
    for m in s.members() {
        avg = avg.add(&m.adjoint().mul(p).mul(m));
    }
    let avg = avg.scale_real(1.0 / s.len() as f64);
    let next = p.scale_real(1.0 - ETA).add(&avg.scale_real(ETA));
    // re-symmetrize against drift, then fix the trace at d
    let herm = next.add(&next.adjoint()).scale_real(0.5);
    let tr = herm.trace().re;
    herm.scale_real(d as f64 / tr)
}

/// Runs `iterations` rounds of the alternating search.
pub fn conjugation_search(s: &MatrixSet, iterations: usize) -> Result<ConjugationResult> {
    let d = s.dim();
    let id = ComplexMatrix::identity(d);
    let initial = s.members().iter().try_fold(0.0f64, |a, m| Ok(a.max(spectral_norm(m)?)))?;
    let mut best_g = id.clone();
    let mut best = initial;
    let mut p = id;

    for _ in 0..iterations {
        let (g, v) = diagonal_pass(s, &best_g, best);
        if v < best {
            best_g = g;
            best = v;
            // continue the ellipsoid iteration from the improved point
            let q = best_g.adjoint().mul(&best_g);
            p = q.scale_real(d as f64 / q.trace().re);
        }

        p = ellipsoid_step(s, &p);
        if !p.is_finite() {
            break;
        }
        let Ok(g) = p.cholesky_upper() else { break };
        if let Some(v) = conjugated_norm(s, &g) {
            if v < best {
                best = v;
                best_g = g;
            }
        }
    }
    Ok(ConjugationResult { g: best_g, value: best, initial })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::C64;
    use crate::random;

    fn real(rows: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(rows).unwrap()
    }

    #[test]
    fn diagonal_is_already_optimal() {
        let s = MatrixSet::new(vec![real(&[&[2.0, 0.0], &[0.0, 0.5]])]).unwrap();
        let r = conjugation_search(&s, 10).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn shrinks_large_off_diagonal() {
        let s = MatrixSet::new(vec![real(&[&[1.0, 100.0], &[0.0, 0.5]])]).unwrap();
        let r = conjugation_search(&s, 20).unwrap();
        assert!(r.initial > 99.0);
        assert!(r.value <= 1.5, "{}", r.value);
        // the explicit scaling diag(1e-3, 1) gives about 1.005
        let t = ComplexMatrix::diagonal(&[C64::new(1e-3, 0.0), C64::new(1.0, 0.0)]);
        assert!(conjugated_norm(&s, &t).unwrap() < 1.01);
    }

    #[test]
    fn undoes_hidden_conjugation() {
        let mut rng = random::rng(11);
        let g0 = real(&[&[1.0, 30.0], &[0.0, 0.2]]);
        let g0_inv = g0.inverse().unwrap();
        let members = (0..2).map(|_| g0_inv.mul(&random::haar_unitary(2, &mut rng)).mul(&g0)).collect();
        let s = MatrixSet::new(members).unwrap();
        let r = conjugation_search(&s, 600).unwrap();
        assert!(r.initial > 10.0);
        assert!(r.value <= 1.0 + 1e-3, "{}", r.value);
        assert!(r.value >= 1.0 - 1e-9);
    }
}
