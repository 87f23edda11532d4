//! p-adic valuations and magnitudes in exponent form.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, Zero};

use crate::prelude::*;
use crate::{Error, Result};

/// Trial-division primality test.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut f = 3u64;
    while f <= p / f {
        if p % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p.to_string()))
    }
}

/// Multiplicity of `p` in a nonzero integer; `None` for zero.
pub fn int_valuation(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// `v_p(q)`, or `None` (BOTTOM) for `q = 0`. `p` is assumed prime.
pub fn padic_valuation(q: &BigRational, p: u64) -> Option<i64> {
    let num = int_valuation(q.numer(), p)?;
    let den = int_valuation(q.denom(), p).expect("denominators are nonzero");
    Some(num - den)
}

/// `|x|_p = p^(-e)` with rational `e`, or zero.
///
/// Ordered by size of the magnitude, so a larger exponent is a smaller
/// magnitude and `Zero` is below everything.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PAdicMagnitude {
    Zero,
    Finite(Ratio<i64>),
}

impl PAdicMagnitude {
    pub const ONE: Self = PAdicMagnitude::Finite(Ratio::new_raw(0, 1));

    pub fn from_exponent(e: Ratio<i64>) -> Self {
        PAdicMagnitude::Finite(e)
    }

    pub fn of(q: &BigRational, p: u64) -> Self {
        match padic_valuation(q, p) {
            Some(v) => PAdicMagnitude::Finite(Ratio::from_integer(v)),
            None => PAdicMagnitude::Zero,
        }
    }

    /// The exponent `e`, or `None` for zero.
    pub fn exponent(&self) -> Option<Ratio<i64>> {
        match self {
            PAdicMagnitude::Zero => None,
            PAdicMagnitude::Finite(e) => Some(*e),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, PAdicMagnitude::Zero)
    }

    pub fn mul(self, rhs: Self) -> Self {
        match (self, rhs) {
            (PAdicMagnitude::Finite(a), PAdicMagnitude::Finite(b)) => PAdicMagnitude::Finite(a + b),
            _ => PAdicMagnitude::Zero,
        }
    }

    pub fn pow(self, k: u32) -> Self {
        match self {
            PAdicMagnitude::Finite(e) => PAdicMagnitude::Finite(e * i64::from(k)),
            PAdicMagnitude::Zero if k == 0 => Self::ONE,
            PAdicMagnitude::Zero => PAdicMagnitude::Zero,
        }
    }

    /// The positive `k`-th root.
    pub fn root(self, k: u32) -> Self {
        assert!(k > 0, "root of order zero");
        match self {
            PAdicMagnitude::Finite(e) => PAdicMagnitude::Finite(e / i64::from(k)),
            PAdicMagnitude::Zero => PAdicMagnitude::Zero,
        }
    }

    /// `p^(-e)` as a float, for display only.
    pub fn to_f64(&self, p: u64) -> f64 {
        match self {
            PAdicMagnitude::Zero => 0.0,
            PAdicMagnitude::Finite(e) => (p as f64).powf(-(*e.numer() as f64) / (*e.denom() as f64)),
        }
    }
}

impl Ord for PAdicMagnitude {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PAdicMagnitude::Zero, PAdicMagnitude::Zero) => Ordering::Equal,
            (PAdicMagnitude::Zero, _) => Ordering::Less,
            (_, PAdicMagnitude::Zero) => Ordering::Greater,
            (PAdicMagnitude::Finite(a), PAdicMagnitude::Finite(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for PAdicMagnitude {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PAdicMagnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PAdicMagnitude::Zero => f.write_str("0"),
            PAdicMagnitude::Finite(e) if e.is_integer() => write!(f, "p^({})", -e.numer()),
            PAdicMagnitude::Finite(e) => write!(f, "p^({}/{})", -e.numer(), e.denom()),
        }
    }
}
