//! Exact rational and integer matrices.

use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::prelude::*;
use crate::{Error, Result};

/// Parses `"a"` or `"a/b"` in base 10 with an optional leading sign on `a`.
/// The denominator must be a positive integer without a sign.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::ParseRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let digits = |u: &str| !u.is_empty() && u.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix(['+', '-']).unwrap_or(num);
    if !digits(unsigned) {
        return Err(bad());
    }
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = match den {
        None => BigInt::one(),
        Some(d) if digits(d) => BigInt::from_str(d).map_err(|_| bad())?,
        Some(_) => return Err(bad()),
    };
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Canonical text form: `"a"` for integers, `"a/b"` otherwise.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A square matrix over the rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    dim: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(dim: usize, data: Vec<BigRational>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if data.len() != dim * dim {
            return Err(Error::Shape { dim, expected: dim * dim, got: data.len() });
        }
        Ok(Self { dim, data })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::Shape { dim, expected: dim * dim, got: dim * r.len() });
            }
            data.extend(r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))));
        }
        Self::new(dim, data)
    }

    pub fn from_strs(rows: &[&[&str]]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::Shape { dim, expected: dim * dim, got: dim * r.len() });
            }
            for s in r.iter() {
                data.push(parse_rational(s)?);
            }
        }
        Self::new(dim, data)
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![BigRational::zero(); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = BigRational::one();
        }
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![BigRational::zero(); dim * dim] }
    }

    pub fn elementary(dim: usize, row: usize, col: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.data[row * dim + col] = BigRational::one();
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.dim + j]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.dim;
        let mut data = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * &rhs.data[k * n + j];
                }
            }
        }
        Self { dim: n, data }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// `(B, D)` with `self = B / D`, `B` integral and `D` the least common
    /// denominator.
    pub fn clear_denominators(&self) -> (IntMatrix, BigInt) {
        let lcm = self.data.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let data = self.data.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
        (IntMatrix { dim: self.dim, data }, lcm)
    }
}

/// A square integer matrix, the working type of the exact enumerations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    pub(crate) dim: usize,
    pub(crate) data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = BigInt::one();
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.dim + j]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.dim;
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.data[k * n + j];
                    if !b.is_zero() {
                        data[i * n + j] += a * b;
                    }
                }
            }
        }
        Self { dim: n, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }

    /// Divides out the gcd of the entries (zero stays zero).
    pub fn primitive(mut self) -> Self {
        let g = self.data.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if !g.is_zero() && !g.is_one() {
            self.data.iter_mut().for_each(|x| *x = &*x / &g);
        }
        self
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix { dim: self.dim, data: self.data.iter().map(|x| BigRational::from_integer(x.clone())).collect() }
    }

    pub fn abs_max(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}
