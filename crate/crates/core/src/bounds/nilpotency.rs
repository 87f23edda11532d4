//! Decides `rho(S) = 0` by checking whether the algebra generated by `S` is
//! nilpotent.
//!
//! The algebra is spanned by all products, so it is the closure of
//! `span(S)` under left multiplication by members. It is nilpotent iff
//! `W_d = 0`, where `W_1` is the algebra and `W_{k+1} = span(B W_k)`.

use crate::matrix::{vector, ComplexMatrix, C64};
use crate::prelude::*;
use crate::set::MatrixSet;
use crate::{Error, Result};

/// Residuals at or below the low end are dependence, above the high end
/// independence. Everything between is reported as indeterminate.
pub const RANK_BAND: (f64, f64) = (1e-8, 1e-5);

#[derive(Clone, Debug, PartialEq)]
pub struct NilpotencyReport {
    pub is_nilpotent: bool,
    /// Dimension of the generated algebra (at most `d^2`).
    pub algebra_dim: usize,
    /// `dim W_k` for `k = 1..`, stopping at zero or at `k = d`.
    pub chain: Vec<usize>,
}

/// Incremental orthonormal basis of a subspace of `C^{d^2}`.
struct Span {
    band: (f64, f64),
    ortho: Vec<Vec<C64>>,
}

impl Span {
    fn new(band: (f64, f64)) -> Self {
        Self { band, ortho: Vec::new() }
    }

    /// Adds `m` if independent. `m` must have Frobenius norm at most about 1
    /// so the band is meaningful.
    fn insert(&mut self, m: &ComplexMatrix) -> Result<bool> {
        let mut r = m.as_slice().to_vec();
        for _ in 0..2 {
            for q in &self.ortho {
                let c = vector::inner(q, &r);
                for (ri, qi) in r.iter_mut().zip(q) {
                    *ri -= c * qi;
                }
            }
        }
        let res = vector::norm2(&r);
        if res <= self.band.0 {
            return Ok(false);
        }
        if res <= self.band.1 {
            return Err(Error::Indeterminate { residual: res, lo: self.band.0, hi: self.band.1 });
        }
        self.ortho.push(vector::scale(&r, C64::new(1.0 / res, 0.0)));
        Ok(true)
    }

    fn dim(&self) -> usize {
        self.ortho.len()
    }
}

fn normalized(m: &ComplexMatrix) -> ComplexMatrix {
    let f = m.frobenius_norm();
    if f == 0.0 {
        m.clone()
    } else {
        m.scale_real(1.0 / f)
    }
}

pub fn nilpotency_test(s: &MatrixSet) -> Result<NilpotencyReport> {
    nilpotency_test_with(s, RANK_BAND)
}

/// As [`nilpotency_test`] with an explicit rank band `(lo, hi)`.
pub fn nilpotency_test_with(s: &MatrixSet, band: (f64, f64)) -> Result<NilpotencyReport> {
    let d = s.dim();
    let gens: Vec<ComplexMatrix> = s.members().iter().map(normalized).collect();

    // algebra basis, stored as unit-norm matrices
    let mut span = Span::new(band);
    let mut basis: Vec<ComplexMatrix> = Vec::new();
    for g in &gens {
        if span.insert(g)? {
            basis.push(g.clone());
        }
    }
    let mut frontier = 0;
    while frontier < basis.len() && span.dim() < d * d {
        let b = basis[frontier].clone();
        frontier += 1;
        for g in &gens {
            let c = g.mul(&b);
            if span.insert(&c)? {
                basis.push(normalized(&c));
            }
        }
    }
    let algebra_dim = basis.len();

    let mut chain = vec![algebra_dim];
    let mut w = basis.clone();
    for _ in 1..d {
        if w.is_empty() {
            break;
        }
        let mut next_span = Span::new(band);
        let mut next = Vec::new();
        'outer: for b in &basis {
            for x in &w {
                let c = b.mul(x);
                if next_span.insert(&c)? {
                    next.push(normalized(&c));
                    if next_span.dim() == d * d {
                        break 'outer;
                    }
                }
            }
        }
        chain.push(next.len());
        w = next;
    }
    Ok(NilpotencyReport { is_nilpotent: w.is_empty(), algebra_dim, chain })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(d: usize, i: usize, j: usize) -> ComplexMatrix {
        ComplexMatrix::elementary(d, i, j)
    }

    #[test]
    fn single_nilpotent() {
        let r = nilpotency_test(&MatrixSet::new(vec![e(2, 0, 1)]).unwrap()).unwrap();
        assert!(r.is_nilpotent);
        assert_eq!(r.algebra_dim, 1);
    }

    #[test]
    fn swap_pair_generates_everything() {
        let r = nilpotency_test(&MatrixSet::new(vec![e(2, 0, 1), e(2, 1, 0)]).unwrap()).unwrap();
        assert!(!r.is_nilpotent);
        assert_eq!(r.algebra_dim, 4);
    }

    #[test]
    fn strictly_upper_triangular_pair() {
        let a = e(3, 0, 1).add(&e(3, 1, 2).scale_real(2.0));
        let b = e(3, 0, 2).add(&e(3, 1, 2));
        let r = nilpotency_test(&MatrixSet::new(vec![a, b]).unwrap()).unwrap();
        assert!(r.is_nilpotent);
        assert!(r.algebra_dim <= 3);
    }

    #[test]
    fn zero_matrix_is_nilpotent() {
        let r = nilpotency_test(&MatrixSet::new(vec![ComplexMatrix::zeros(3)]).unwrap()).unwrap();
        assert!(r.is_nilpotent);
        assert_eq!(r.algebra_dim, 0);
    }

    #[test]
    fn band_reports_indeterminate() {
        let a = ComplexMatrix::diagonal(&[C64::new(1.0, 0.0), C64::new(1e-7, 0.0)]);
        let err = nilpotency_test(&MatrixSet::new(vec![a]).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Indeterminate { .. }));
    }
}
