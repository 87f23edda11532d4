//! Eigenvalues of dense complex matrices.
//!
//! Householder reduction to upper Hessenberg form followed by the shifted
//! QR iteration with Givens rotations, converging to the complex Schur form.
//! Only the eigenvalues are kept, so rotations are applied to the active
//! diagonal block alone.

use crate::matrix::{ComplexMatrix, C64, ZERO};
use crate::prelude::*;
use crate::{Error, Result};

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// All eigenvalues of `a`, with multiplicity, in no particular order.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<C64>> {
    let n = a.dim();
    match n {
        1 => return Ok(vec![a[(0, 0)]]),
        2 => return Ok(eigenvalues_2x2(a[(0, 0)], a[(0, 1)], a[(1, 0)], a[(1, 1)]).to_vec()),
        _ => {}
    }
    let mut h = hessenberg(a);
    schur_diagonal(&mut h, n)
}

/// Largest eigenvalue modulus.
pub fn spectral_radius(a: &ComplexMatrix) -> Result<f64> {
    Ok(eigenvalues(a)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Largest eigenvalue of a Hermitian matrix; only the upper triangle of
/// the 2x2 case is read.
pub fn hermitian_max_eigenvalue(h: &ComplexMatrix) -> Result<f64> {
    if h.dim() == 2 {
        let (a, d) = (h[(0, 0)].re, h[(1, 1)].re);
        let b = h[(0, 1)].norm();
        let half = 0.5 * (a - d);
        return Ok(0.5 * (a + d) + (half * half + b * b).sqrt());
    }
    Ok(eigenvalues(h)?.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max))
}

fn eigenvalues_2x2(a: C64, b: C64, c: C64, d: C64) -> [C64; 2] {
    let mean = (a + d) * 0.5;
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let big = if (mean + disc).norm() >= (mean - disc).norm() { mean + disc } else { mean - disc };
    // The smaller root from the determinant avoids cancellation.
    let det = a * d - b * c;
    let small = if big == ZERO { ZERO } else { det / big };
    [big, small]
}

fn hessenberg(a: &ComplexMatrix) -> Vec<C64> {
    let n = a.dim();
    let mut h = a.as_slice().to_vec();
    let mut v = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let alpha_norm = ((k + 1)..n).map(|i| h[i * n + k].norm_sqr()).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1) * n + k];
        let phase = if x0.norm() == 0.0 { C64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * alpha_norm;
        for (i, vi) in v.iter_mut().enumerate().take(n).skip(k + 1) {
            *vi = h[i * n + k];
        }
        v[k + 1] -= alpha;
        let v_norm_sqr = ((k + 1)..n).map(|i| v[i].norm_sqr()).sum::<f64>();
        if v_norm_sqr == 0.0 {
            continue;
        }
        // H <- (I - 2 v v^H / |v|^2) H (I - 2 v v^H / |v|^2)
        for j in 0..n {
            let s: C64 = ((k + 1)..n).map(|i| v[i].conj() * h[i * n + j]).sum();
            let f = s * (2.0 / v_norm_sqr);
            for i in (k + 1)..n {
                h[i * n + j] -= v[i] * f;
            }
        }
        for i in 0..n {
            let s: C64 = ((k + 1)..n).map(|j| h[i * n + j] * v[j]).sum();
            let f = s * (2.0 / v_norm_sqr);
            for j in (k + 1)..n {
                h[i * n + j] -= f * v[j].conj();
            }
        }
        for i in (k + 2)..n {
            h[i * n + k] = ZERO;
        }
    }
    h
}

#[derive(Clone, Copy)]
struct Givens {
    c: f64,
    s: C64,
}

impl Givens {
    /// Rotation mapping `(a, b)` to `(r, 0)`.
    fn zeroing(a: C64, b: C64) -> Self {
        let (na, nb) = (a.norm(), b.norm());
        if nb == 0.0 {
            return Self { c: 1.0, s: ZERO };
        }
        if na == 0.0 {
            return Self { c: 0.0, s: b.conj() / nb };
        }
        let r = libm::hypot(na, nb);
        Self { c: na / r, s: (a / na) * b.conj() / r }
    }
}

fn schur_diagonal(h: &mut [C64], n: usize) -> Result<Vec<C64>> {
    let idx = |i: usize, j: usize| i * n + j;
    let scale = h.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(vec![ZERO; n]);
    }
    let mut eig = vec![ZERO; n];
    let mut hi = n - 1;
    let mut sweeps = 0usize;
    let mut total = 0usize;
    let mut rots: Vec<Givens> = Vec::with_capacity(n);
    loop {
        if hi == 0 {
            eig[0] = h[idx(0, 0)];
            break;
        }
        let mut lo = hi;
        while lo > 0 {
            let sub = h[idx(lo, lo - 1)].norm();
            let mut diag = h[idx(lo - 1, lo - 1)].norm() + h[idx(lo, lo)].norm();
            if diag == 0.0 {
                diag = scale;
            }
            if sub <= f64::EPSILON * diag {
                h[idx(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[idx(hi, hi)];
            hi -= 1;
            sweeps = 0;
            continue;
        }
        if hi - lo == 1 {
            let pair = eigenvalues_2x2(h[idx(lo, lo)], h[idx(lo, hi)], h[idx(hi, lo)], h[idx(hi, hi)]);
            eig[lo] = pair[0];
            eig[hi] = pair[1];
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            sweeps = 0;
            continue;
        }
        sweeps += 1;
        total += 1;
        if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
            return Err(Error::EigenFailure { iterations: total });
        }
        let shift = if sweeps % 11 == 0 {
            // Exceptional shift breaks cycles on symmetric configurations.
            h[idx(hi, hi)] + C64::new(0.75 * h[idx(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(h[idx(hi - 1, hi - 1)], h[idx(hi - 1, hi)], h[idx(hi, hi - 1)], h[idx(hi, hi)])
        };
        for i in lo..=hi {
            h[idx(i, i)] -= shift;
        }
        rots.clear();
        for k in lo..hi {
            let g = Givens::zeroing(h[idx(k, k)], h[idx(k + 1, k)]);
            for j in k..=hi {
                let (x, y) = (h[idx(k, j)], h[idx(k + 1, j)]);
                h[idx(k, j)] = x * g.c + g.s * y;
                h[idx(k + 1, j)] = -g.s.conj() * x + y * g.c;
            }
            rots.push(g);
        }
        for (off, g) in rots.iter().enumerate() {
            let k = lo + off;
            let last = (k + 2).min(hi);
            for i in lo..=last {
                let (x, y) = (h[idx(i, k)], h[idx(i, k + 1)]);
                h[idx(i, k)] = x * g.c + y * g.s.conj();
                h[idx(i, k + 1)] = -x * g.s + y * g.c;
            }
        }
        for i in lo..=hi {
            h[idx(i, i)] += shift;
        }
    }
    Ok(eig)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let [r1, r2] = eigenvalues_2x2(a, b, c, d);
    if (r1 - d).norm() <= (r2 - d).norm() {
        r1
    } else {
        r2
    }
}
