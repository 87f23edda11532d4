//! Small integer combinations of vectors with small norm.
//!
//! Among the `(T+1)^n` sums `sum d_i x_i` with `0 <= d_i <= T`, two must lie
//! within `eps` of each other once there are more of them than disjoint
//! `eps/2`-balls fit in the ball of radius `nT + eps/2`. Their difference
//! `c = d' - d` has `|c_i| <= T` and `|sum c_i x_i| <= eps`.
//!
//! The ball count is a volume comparison, so the exponent in the hypothesis
//! is the real dimension of the span: `2d` for complex vectors and `d` when
//! every vector is real. With the complex dimension `d` the count is wrong:
//! `x = (1, i)`, `T = 8`, `eps = 1/2` passes `81 > 65` yet every nonzero
//! combination has modulus at least 1.

use crate::matrix::C64;
use crate::prelude::*;
use crate::set::NormSpec;
use crate::{Error, Result, TOL_REL};

/// Coordinates of a cell in the search grid.
type Cell = Vec<i64>;

fn real_dim(xs: &[Vec<C64>]) -> usize {
    let d = xs.first().map_or(0, Vec::len);
    if xs.iter().all(|x| x.iter().all(|z| z.im == 0.0)) {
        d
    } else {
        2 * d
    }
}

/// Whether `(1+T)^n > (1 + 2nT/eps)^m` with `m` the real dimension of the
/// vectors' ambient space. Compared in logarithms.
pub fn hypothesis_holds(xs: &[Vec<C64>], t: u32, eps: f64) -> bool {
    let n = xs.len() as f64;
    let m = real_dim(xs) as f64;
    let t = t as f64;
    n * (1.0 + t).ln() > m * (1.0 + 2.0 * n * t / eps).ln()
}

fn validate(xs: &[Vec<C64>], t: u32, eps: f64, norm: &NormSpec) -> Result<()> {
    let d = xs.first().ok_or_else(|| Error::InvalidArgument("need at least one vector".into()))?.len();
    if d == 0 || xs.iter().any(|x| x.len() != d) {
        return Err(Error::InvalidArgument("vectors must share a positive length".into()));
    }
    if t == 0 {
        return Err(Error::InvalidArgument("T must be at least 1".into()));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument("eps must lie in (0, 1)".into()));
    }
    if let Some(i) = xs.iter().position(|x| norm.vector_norm(x) > 1.0 + TOL_REL) {
        return Err(Error::Precondition(format!("|x_{i}| <= 1 fails")));
    }
    Ok(())
}

/// Integers `c`, not all zero, `|c_i| <= T`, with `|sum c_i x_i| <= eps`.
/// Fails with [`Error::HypothesisUnmet`] unless [`hypothesis_holds`].
pub fn siegel_combination(xs: &[Vec<C64>], t: u32, eps: f64, norm: &NormSpec, cap: u64) -> Result<Vec<i64>> {
    validate(xs, t, eps, norm)?;
    if !hypothesis_holds(xs, t, eps) {
        return Err(Error::HypothesisUnmet(format!(
            "(1+T)^n <= (1+2nT/eps)^m for T = {t}, n = {}, eps = {eps}, real dimension m = {}",
            xs.len(),
            real_dim(xs)
        )));
    }
    siegel_search(xs, t, eps, norm, cap)?.ok_or_else(|| {
        // unreachable when the counting argument is right
        Error::HypothesisUnmet("no combination found despite the hypothesis".into())
    })
}

/// The same search without the hypothesis gate. Returns `None` when no
/// difference of two nonnegative sums is that small.
///
/// Sums are bucketed on a grid of side `K eps` over real coordinates, where
/// `K` bounds a coordinate by the norm, so any pair within `eps` sits in
/// neighbouring cells. The first pair found in coefficient order wins; the
/// sign is fixed so the first nonzero coefficient is positive.
pub fn siegel_search(xs: &[Vec<C64>], t: u32, eps: f64, norm: &NormSpec, cap: u64) -> Result<Option<Vec<i64>>> {
    validate(xs, t, eps, norm)?;
    let n = xs.len();
    let d = xs[0].len();
    let count = (t as u128 + 1).saturating_pow(n as u32);
    if count > cap as u128 {
        return Err(Error::Budget { words: count, cap });
    }
    let real = real_dim(xs) == d;
    let side = norm.coordinate_bound()? * eps;

    let coords = |v: &[C64]| -> Vec<f64> {
        if real {
            v.iter().map(|z| z.re).collect()
        } else {
            v.iter().flat_map(|z| [z.re, z.im]).collect()
        }
    };
    let cell_of = |c: &[f64]| -> Cell { c.iter().map(|&u| (u / side).floor() as i64).collect() };
    let dims = if real { d } else { 2 * d };
    let offsets: Vec<Vec<i64>> = {
        let mut all = vec![Vec::new()];
        for _ in 0..dims {
            all = all.into_iter().flat_map(|o| [-1i64, 0, 1].map(|k| [o.as_slice(), &[k]].concat())).collect();
        }
        all
    };

    let mut grid: BTreeMap<Cell, Vec<usize>> = BTreeMap::new();
    let mut points: Vec<(Vec<u32>, Vec<C64>)> = Vec::with_capacity(count as usize);
    let mut coef = vec![0u32; n];
    loop {
        let mut sum = vec![C64::new(0.0, 0.0); d];
        for (c, x) in coef.iter().zip(xs) {
            if *c != 0 {
                for (s, &xi) in sum.iter_mut().zip(x) {
                    *s += xi * *c as f64;
                }
            }
        }
        let cell = cell_of(&coords(&sum));
        for off in &offsets {
            let key: Cell = cell.iter().zip(off).map(|(a, b)| a + b).collect();
            let Some(bucket) = grid.get(&key) else { continue };
            for &j in bucket {
                let diff: Vec<C64> = sum.iter().zip(&points[j].1).map(|(a, b)| a - b).collect();
                if norm.vector_norm(&diff) <= eps {
                    let mut c: Vec<i64> = coef.iter().zip(&points[j].0).map(|(&a, &b)| a as i64 - b as i64).collect();
                    if c.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) {
                        c.iter_mut().for_each(|v| *v = -*v);
                    }
                    return Ok(Some(c));
                }
            }
        }
        grid.entry(cell).or_default().push(points.len());
        points.push((coef.clone(), sum));

        // next coefficient vector, last index fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            coef[pos] += 1;
            if coef[pos] <= t {
                break;
            }
            coef[pos] = 0;
        }
    }
}

/// Re-evaluates a combination: bounds, nonzero, and residual `<= eps`.
pub fn verify_combination(xs: &[Vec<C64>], c: &[i64], t: u32, eps: f64, norm: &NormSpec) -> bool {
    if c.len() != xs.len() || c.iter().all(|&v| v == 0) || c.iter().any(|v| v.unsigned_abs() > t as u64) {
        return false;
    }
    let d = xs[0].len();
    let mut sum = vec![C64::new(0.0, 0.0); d];
    for (&ci, x) in c.iter().zip(xs) {
        for (s, &xi) in sum.iter_mut().zip(x) {
            *s += xi * ci as f64;
        }
    }
    norm.vector_norm(&sum) <= eps * (1.0 + TOL_REL)
}
