//! Truncated evaluation of the Rota–Strang norm
//! `v_r(x) = sum_{n>=0} r^n |S^n x|`, with a rigorous tail bound.

use crate::matrix::{vector, C64};
use crate::prelude::*;
use crate::set::{self, operator_norm, MatrixSet, NormSpec};
use crate::{Error, Result};

/// Depth of the product enumeration that bounds the tail.
const TAIL_DEPTH: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct RotaStrang {
    /// `sum_{n<=trunc} r^n |S^n x|_2`.
    pub value: f64,
    /// Upper bound on the omitted terms `n > trunc`.
    pub tail: f64,
}

/// Pushes the vector set `S^n x` forward, dropping zeros and exact repeats.
fn step(s: &MatrixSet, xs: &[Vec<C64>], cap: u64, visited: &mut u64) -> Result<Vec<Vec<C64>>> {
    let mut out: Vec<Vec<C64>> = Vec::new();
    for x in xs {
        for m in s.members() {
            *visited += 1;
            if *visited > cap {
                return Err(Error::Budget { words: *visited as u128, cap });
            }
            let y = m.mul_vec(x);
            if vector::norm_inf(&y) == 0.0 || out.contains(&y) {
                continue;
            }
            out.push(y);
        }
    }
    Ok(out)
}

/// Partial sum of the Rota–Strang series at `x` through `n = trunc`, and a
/// bound on the rest.
///
/// The tail uses `|S^n| <= C u^n` with `u = |S^k|^{1/k}` and
/// `C = max_{j<k} |S^j| / u^j`, over the `k <= 8` that gives the smallest
/// bound. Fails with [`Error::Divergent`] when no such `u` has `r u < 1`.
pub fn rota_strang_norm(s: &MatrixSet, r: f64, x: &[C64], trunc: usize, cap: u64) -> Result<RotaStrang> {
    if x.len() != s.dim() {
        return Err(Error::InvalidArgument(format!("vector has length {}, expected {}", x.len(), s.dim())));
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument("r must be a finite nonnegative number".into()));
    }
    if trunc == 0 {
        return Err(Error::InvalidArgument("trunc must be at least 1".into()));
    }

    // |S^j| for j = 0..=depth
    let depth = TAIL_DEPTH.min(set::max_depth_within(s.len(), cap)).max(1);
    let mut level = vec![0.0f64; depth + 1];
    level[0] = 1.0;
    for (w, p) in set::enumerate_products(s, depth, None, &NormSpec::Spectral, cap)? {
        let k = w.len();
        level[k] = level[k].max(operator_norm(&p, &NormSpec::Spectral)?);
    }
    let x_norm = vector::norm2(x);

    let tail = if let Some(k0) = level.iter().position(|&v| v == 0.0) {
        // S^{k0} = 0: the series is finite
        (trunc + 1..k0).map(|n| level[n] * r.powi(n as i32)).sum::<f64>() * x_norm
    } else {
        let mut best: Option<f64> = None;
        let mut smallest_product = f64::INFINITY;
        for k in 1..=depth {
            let u = level[k].powf(1.0 / k as f64);
            let ru = r * u;
            smallest_product = smallest_product.min(ru);
            if ru >= 1.0 {
                continue;
            }
            let c = (0..k).map(|j| level[j] / u.powi(j as i32)).fold(0.0, f64::max);
            let t = c * x_norm * ru.powi(trunc as i32 + 1) / (1.0 - ru);
            best = Some(best.map_or(t, |b: f64| b.min(t)));
        }
        best.ok_or(Error::Divergent { product: smallest_product })?
    };

    let mut value = x_norm;
    let mut xs = vec![x.to_vec()];
    let mut visited = 0u64;
    let mut rn = 1.0;
    for _ in 1..=trunc {
        xs = step(s, &xs, cap, &mut visited)?;
        if xs.is_empty() {
            break;
        }
        rn *= r;
        let m = xs.iter().map(|y| vector::norm2(y)).fold(0.0, f64::max);
        value += rn * m;
    }
    Ok(RotaStrang { value, tail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ComplexMatrix;
    use crate::DEFAULT_WORD_CAP;

    fn e1() -> Vec<C64> {
        vector::basis(2, 0)
    }

    #[test]
    fn zero_set_has_only_the_first_term() {
        let s = MatrixSet::new(vec![ComplexMatrix::zeros(2)]).unwrap();
        let rs = rota_strang_norm(&s, 3.0, &e1(), 10, DEFAULT_WORD_CAP).unwrap();
        assert_eq!(rs, RotaStrang { value: 1.0, tail: 0.0 });
    }

    #[test]
    fn half_identity_is_geometric() {
        let s = MatrixSet::new(vec![ComplexMatrix::identity(2).scale_real(0.5)]).unwrap();
        for trunc in [1, 5, 20] {
            let rs = rota_strang_norm(&s, 1.0, &e1(), trunc, DEFAULT_WORD_CAP).unwrap();
            assert!((rs.value - (2.0 - 0.5f64.powi(trunc as i32))).abs() < 1e-14);
            assert!(rs.tail <= 0.5f64.powi(trunc as i32) * (1.0 + 1e-12));
            assert!(rs.value + rs.tail >= 2.0 - 1e-14);
        }
    }

    #[test]
    fn swap_pair_alternates_basis_vectors() {
        let s = MatrixSet::new(vec![ComplexMatrix::elementary(2, 0, 1), ComplexMatrix::elementary(2, 1, 0)]).unwrap();
        let trunc: usize = 12;
        let rs = rota_strang_norm(&s, 0.5, &e1(), trunc, DEFAULT_WORD_CAP).unwrap();
        assert!((rs.value - (2.0 - 0.5f64.powi(trunc as i32))).abs() < 1e-14);
        assert!(rs.tail <= 0.5f64.powi(trunc as i32 - 1));
        assert!(rs.value <= 2.0 && rs.value + rs.tail >= 2.0 - 1e-14);
    }

    #[test]
    fn divergent_radius_is_rejected() {
        let s = MatrixSet::new(vec![ComplexMatrix::identity(2)]).unwrap();
        let err = rota_strang_norm(&s, 1.0, &e1(), 4, DEFAULT_WORD_CAP).unwrap_err();
        assert!(matches!(err, Error::Divergent { .. }));
    }
}
