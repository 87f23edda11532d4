//! Characteristic polynomials and Newton polygons.
//!
//! Polynomials are coefficient lists in descending powers,
//! `[a_0, a_1, ..., a_d]` for `a_0 t^d + a_1 t^(d-1) + ... + a_d`. With this
//! indexing the slopes of the lower hull of `(i, v(a_i))` are exactly the
//! valuations of the roots, so the leftmost slope belongs to the largest
//! root.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::One;

use crate::prelude::*;
use crate::{Error, Result};

use super::magnitude::{padic_valuation, PAdicMagnitude};
use super::rational::{IntMatrix, RationalMatrix};

/// Characteristic polynomial `det(tI - A)` of an integer matrix, descending.
///
/// Uses sums of principal minors up to dimension 3 and Faddeev-LeVerrier
/// above, where every division is exact.
pub(crate) fn int_char_poly(a: &IntMatrix) -> Vec<BigInt> {
    let d = a.dim();
    let m = |i: usize, j: usize| a.get(i, j);
    match d {
        1 => vec![BigInt::one(), -m(0, 0)],
        2 => vec![BigInt::one(), -(m(0, 0) + m(1, 1)), m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)],
        3 => {
            let minor = |i: usize, j: usize| m(i, i) * m(j, j) - m(i, j) * m(j, i);
            let det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
            vec![BigInt::one(), -a.trace(), minor(0, 1) + minor(0, 2) + minor(1, 2), -det]
        }
        _ => faddeev_leverrier(a),
    }
}

fn faddeev_leverrier(a: &IntMatrix) -> Vec<BigInt> {
    let d = a.dim();
    let mut coeffs = vec![BigInt::one()];
    let mut m = IntMatrix::identity(d);
    for k in 1..=d {
        let mut am = a.mul(&m);
        let c = -(am.trace() / BigInt::from(k));
        for i in 0..d {
            am.data[i * d + i] += &c;
        }
        coeffs.push(c);
        m = am;
    }
    coeffs
}

/// Exact monic characteristic polynomial `det(tI - A)`, descending powers.
pub fn char_poly_exact(a: &RationalMatrix) -> Vec<BigRational> {
    let (b, den) = a.clear_denominators();
    let mut scale = BigInt::one();
    int_char_poly(&b)
        .into_iter()
        .map(|c| {
            let q = BigRational::new(c, scale.clone());
            scale *= &den;
            q
        })
        .collect()
}

/// Leftmost lower-hull slope for a monic polynomial given the valuations of
/// `a_1, ..., a_d`: `min_j v(a_j) / j`, or `None` if every `a_j` vanishes.
pub(crate) fn min_slope(valuations: impl IntoIterator<Item = (usize, i64)>) -> Option<Ratio<i64>> {
    valuations.into_iter().map(|(j, v)| Ratio::new(v, j as i64)).min()
}

/// Lower convex hull of `(i, v(a_i))` over the nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub points: Vec<(usize, i64)>,
    pub lower_hull: Vec<(usize, i64)>,
    /// Slope of the leftmost hull segment; `None` when the hull is a single
    /// point (for a monic polynomial: it is `t^d`).
    pub min_slope: Option<Ratio<i64>>,
}

impl NewtonPolygon {
    pub fn new(coeffs: &[BigRational], p: u64) -> Self {
        let points: Vec<(usize, i64)> =
            coeffs.iter().enumerate().filter_map(|(i, c)| padic_valuation(c, p).map(|v| (i, v))).collect();
        let mut hull: Vec<(usize, i64)> = Vec::new();
        for &pt in &points {
            while hull.len() >= 2 {
                let (x1, y1) = hull[hull.len() - 2];
                let (x2, y2) = hull[hull.len() - 1];
                // Drop the middle point unless it lies strictly below the chord.
                let cross = (x2 as i128 - x1 as i128) * (pt.1 as i128 - y1 as i128)
                    - (y2 as i128 - y1 as i128) * (pt.0 as i128 - x1 as i128);
                if cross <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let min_slope = match hull.as_slice() {
            [(x1, y1), (x2, y2), ..] => Some(Ratio::new(y2 - y1, (x2 - x1) as i64)),
            _ => None,
        };
        Self { points, lower_hull: hull, min_slope }
    }

    /// Hull slopes with their horizontal lengths, left to right. Each slope
    /// is the valuation of that many roots.
    pub fn slopes(&self) -> Vec<(Ratio<i64>, usize)> {
        self.lower_hull
            .windows(2)
            .map(|w| {
                let len = w[1].0 - w[0].0;
                (Ratio::new(w[1].1 - w[0].1, len as i64), len)
            })
            .collect()
    }
}

/// Largest `|root|_p` of a monic polynomial: `p^(-m)` with `m` the leftmost
/// Newton slope, zero for `t^d`.
pub fn max_root_magnitude(coeffs: &[BigRational], p: u64) -> Result<PAdicMagnitude> {
    if coeffs.len() < 2 || !coeffs[0].is_one() {
        return Err(Error::InvalidArgument("expected a monic polynomial of degree at least 1".into()));
    }
    Ok(match NewtonPolygon::new(coeffs, p).min_slope {
        Some(m) => PAdicMagnitude::Finite(m),
        None => PAdicMagnitude::Zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
    }

    #[test]
    fn diagonal_and_companion() {
        let a = RationalMatrix::from_integers(&[&[3, 0], &[0, 5]]).unwrap();
        assert_eq!(char_poly_exact(&a), ints(&[1, -8, 15]));
        let c = RationalMatrix::from_integers(&[&[0, 1], &[7, 0]]).unwrap();
        assert_eq!(char_poly_exact(&c), ints(&[1, 0, -7]));
    }

    #[test]
    fn rational_entries_scale_back() {
        let a = RationalMatrix::from_strs(&[&["1/2", "1/3"], &["1/5", "0"]]).unwrap();
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(char_poly_exact(&a), vec![q(1, 1), q(-1, 2), q(-1, 15)]);
    }

    #[test]
    fn faddeev_matches_closed_forms() {
        let a = RationalMatrix::from_integers(&[&[2, -1, 4], &[0, 3, 7], &[-5, 1, 1]]).unwrap();
        let (b, _) = a.clear_denominators();
        assert_eq!(faddeev_leverrier(&b), int_char_poly(&b));
    }

    #[test]
    fn root_magnitudes() {
        for p in [2i64, 3, 5] {
            let m = max_root_magnitude(&ints(&[1, -(p + p * p), p * p * p]), p as u64).unwrap();
            assert_eq!(m, PAdicMagnitude::Finite(Ratio::from_integer(1)));
            let m = max_root_magnitude(&ints(&[1, 0, p]), p as u64).unwrap();
            assert_eq!(m, PAdicMagnitude::Finite(Ratio::new(1, 2)));
        }
        assert_eq!(max_root_magnitude(&ints(&[1, 0, 0, 0]), 3).unwrap(), PAdicMagnitude::Zero);
        assert!(max_root_magnitude(&ints(&[2, 1]), 3).is_err());
    }

    #[test]
    fn hull_and_slopes() {
        // (t - 2)(t - 4)(t - 1/2) over p = 2: root valuations 1, 2, -1.
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let coeffs = vec![q(1, 1), q(-13, 2), q(11, 1), q(-4, 1)];
        let np = NewtonPolygon::new(&coeffs, 2);
        assert_eq!(np.lower_hull, vec![(0, 0), (1, -1), (2, 0), (3, 2)]);
        let slopes: Vec<_> = np.slopes().into_iter().map(|(s, _)| s).collect();
        assert_eq!(slopes, [Ratio::from_integer(-1), Ratio::from_integer(1), Ratio::from_integer(2)]);
        assert_eq!(np.min_slope, Some(Ratio::from_integer(-1)));
        assert_eq!(min_slope([(1, -1), (2, 0), (3, 2)]), np.min_slope);
    }
}
