//! Matrix sets over the rationals under `|.|_p`: exact joint spectral
//! radius, the `|S^d| <= rho |S|^(d-1)` check, and exact nilpotency.

use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Zero;

use crate::prelude::*;
use crate::set::{check_budget, word_count, Word};
use crate::{Error, Result, DEFAULT_DIM_CAP, DEFAULT_WORD_CAP};

use super::ell_bound;
use super::magnitude::{check_prime, int_valuation, PAdicMagnitude};
use super::newton::{int_char_poly, min_slope};
use super::rational::{IntMatrix, RationalMatrix};

/// A nonempty set of `d x d` rational matrices with a prime `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicMatrixSet {
    prime: u64,
    dim: usize,
    members: Vec<RationalMatrix>,
    /// `members[i] = scaled[i] / den[i]` with `scaled[i]` integral.
    scaled: Vec<IntMatrix>,
    /// `v_p(den[i])`.
    den_val: Vec<i64>,
}

impl PAdicMatrixSet {
    pub fn new(prime: u64, members: Vec<RationalMatrix>) -> Result<Self> {
        Self::with_dim_cap(prime, members, DEFAULT_DIM_CAP)
    }

    pub fn with_dim_cap(prime: u64, members: Vec<RationalMatrix>, dim_cap: usize) -> Result<Self> {
        check_prime(prime)?;
        let first = members.first().ok_or(Error::EmptySet)?;
        let dim = first.dim();
        if dim > dim_cap {
            return Err(Error::DimensionCap { dim, cap: dim_cap });
        }
        for (index, m) in members.iter().enumerate() {
            if m.dim() != dim {
                return Err(Error::MixedDimensions { index, expected: dim, got: m.dim() });
            }
        }
        let (scaled, den_val) = members
            .iter()
            .map(|m| {
                let (b, den) = m.clear_denominators();
                (b, int_valuation(&den, prime).expect("denominators are nonzero"))
            })
            .unzip();
        Ok(Self { prime, dim, members, scaled, den_val })
    }

    /// Integer-entry convenience constructor.
    pub fn from_integers(prime: u64, members: &[&[&[i64]]]) -> Result<Self> {
        let members = members.iter().map(|rows| RationalMatrix::from_integers(rows)).collect::<Result<_>>()?;
        Self::new(prime, members)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[RationalMatrix] {
        &self.members
    }

    pub fn eval(&self, w: &Word) -> Result<RationalMatrix> {
        let mut acc = RationalMatrix::identity(self.dim);
        for &i in w.indices() {
            let m = self.members.get(i).ok_or(Error::WordIndex { index: i, len: self.len() })?;
            acc = m.mul(&acc);
        }
        Ok(acc)
    }

    /// All products of exactly `k` members, in lexicographic word order.
    pub fn power_set(&self, k: usize, cap: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("power must be at least 1".into()));
        }
        let count = (self.len() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        if count > cap as u128 {
            return Err(Error::Budget { words: count, cap });
        }
        let mut members = Vec::with_capacity(count as usize);
        for_each_word(self.len(), k, |w| {
            members.push(self.eval(&Word::new(w.to_vec())).expect("indices are in range"));
        });
        Self::new(self.prime, members)
    }
}

fn for_each_word(letters: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut w = vec![0usize; k];
    loop {
        f(&w);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            w[i] += 1;
            if w[i] < letters {
                break;
            }
            w[i] = 0;
        }
    }
}

/// `max_ij |a_ij|_p`, the operator norm of `a` for `|x|_0 = max_i |x_i|_p`.
pub fn matrix_norm(a: &RationalMatrix, p: u64) -> PAdicMagnitude {
    a.entries().iter().map(|q| PAdicMagnitude::of(q, p)).max().unwrap_or(PAdicMagnitude::Zero)
}

pub fn ultrametric_set_norm(s: &PAdicMatrixSet) -> PAdicMagnitude {
    s.members.iter().map(|m| matrix_norm(m, s.prime)).max().unwrap_or(PAdicMagnitude::Zero)
}

/// Integer product `B_w` with `eval(w) = B_w / D_w`, and `v_p(D_w)`.
struct ScaledProduct {
    b: IntMatrix,
    den_val: i64,
}

impl ScaledProduct {
    fn spectral_radius(&self, p: u64) -> PAdicMagnitude {
        let coeffs = int_char_poly(&self.b);
        let vals = coeffs.iter().enumerate().skip(1).filter_map(|(j, c)| int_valuation(c, p).map(|v| (j, v)));
        match min_slope(vals) {
            // v(a_j(A)) = v(a_j(B)) - j v(D), so every slope shifts by v(D).
            Some(m) => PAdicMagnitude::Finite(m - self.den_val),
            None => PAdicMagnitude::Zero,
        }
    }

    fn norm(&self, p: u64) -> PAdicMagnitude {
        match self.b.entries().iter().filter_map(|x| int_valuation(x, p)).min() {
            Some(v) => PAdicMagnitude::Finite(Ratio::from_integer(v - self.den_val)),
            None => PAdicMagnitude::Zero,
        }
    }
}

/// Depth-first walk over all words of length `1..=depth`, extending each
/// prefix product by one member on the left.
fn walk(s: &PAdicMatrixSet, depth: usize, visit: &mut dyn FnMut(&[usize], &ScaledProduct)) {
    fn rec(
        s: &PAdicMatrixSet,
        depth: usize,
        word: &mut Vec<usize>,
        prefix: &ScaledProduct,
        visit: &mut dyn FnMut(&[usize], &ScaledProduct),
    ) {
        for (i, m) in s.scaled.iter().enumerate() {
            word.push(i);
            let next = ScaledProduct { b: m.mul(&prefix.b), den_val: prefix.den_val + s.den_val[i] };
            visit(word, &next);
            if word.len() < depth {
                rec(s, depth, word, &next, visit);
            }
            word.pop();
        }
    }
    let root = ScaledProduct { b: IntMatrix::identity(s.dim), den_val: 0 };
    if depth > 0 {
        rec(s, depth, &mut Vec::with_capacity(depth), &root, visit);
    }
}

/// Larger magnitude first, then the shorter word, then the lexicographically
/// smaller one.
fn beats(m: PAdicMagnitude, w: &[usize], best: &(PAdicMagnitude, Word)) -> bool {
    match m.cmp(&best.0) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => Word::new(w.to_vec()).shortlex_cmp(&best.1).is_lt(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicJsr {
    pub rho: PAdicMagnitude,
    /// The word attaining `rho`: largest `Λ(w)^(1/|w|)`, then shortest,
    /// then lexicographically first.
    pub witness: Word,
    /// Longest word length searched.
    pub ell: usize,
    /// `levels[k-1] = max_{|w|=k} Λ(w)^(1/k)`.
    pub levels: Vec<PAdicMagnitude>,
    pub words: u128,
}

/// Exact `rho(S) = max_{k <= ell_bound(d)} Λ(S^k)^(1/k)` under the default
/// word cap.
pub fn padic_jsr_exact(s: &PAdicMatrixSet) -> Result<PAdicJsr> {
    padic_jsr_exact_with(s, ell_bound(s.dim), DEFAULT_WORD_CAP)
}

/// `max_{k <= ell} Λ(S^k)^(1/k)`. Equals `rho(S)` for any
/// `ell >= ell_bound(d)`.
pub fn padic_jsr_exact_with(s: &PAdicMatrixSet, ell: usize, cap: u64) -> Result<PAdicJsr> {
    if ell == 0 {
        return Err(Error::InvalidArgument("word length bound must be at least 1".into()));
    }
    check_budget(s.len(), ell, cap)?;
    let p = s.prime;
    let mut levels = vec![PAdicMagnitude::Zero; ell];
    let mut best = (PAdicMagnitude::Zero, Word::new(vec![0]));
    walk(s, ell, &mut |w, prod| {
        let k = w.len();
        let m = prod.spectral_radius(p).root(k as u32);
        levels[k - 1] = levels[k - 1].max(m);
        if beats(m, w, &best) {
            best = (m, Word::new(w.to_vec()));
        }
    });
    Ok(PAdicJsr { rho: best.0, witness: best.1, ell, levels, words: word_count(s.len(), ell) })
}

/// Both sides of `|S^d|_0 <= rho(S) |S|_0^(d-1)`, computed exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UltraBocaReport {
    pub lhs: PAdicMagnitude,
    pub rhs: PAdicMagnitude,
    pub rho: PAdicMagnitude,
    pub set_norm: PAdicMagnitude,
    pub holds: bool,
    /// A length-`d` word of largest norm (lexicographically first).
    pub extremal_word: Word,
    pub rho_witness: Word,
}

pub fn check_ultra_boca(s: &PAdicMatrixSet) -> Result<UltraBocaReport> {
    let jsr = padic_jsr_exact(s)?;
    let d = s.dim;
    let count = (s.len() as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if count > DEFAULT_WORD_CAP as u128 {
        return Err(Error::Budget { words: count, cap: DEFAULT_WORD_CAP });
    }
    let p = s.prime;
    let mut extremal = (PAdicMagnitude::Zero, Word::new(vec![0; d]));
    walk(s, d, &mut |w, prod| {
        if w.len() == d {
            let n = prod.norm(p);
            if beats(n, w, &extremal) {
                extremal = (n, Word::new(w.to_vec()));
            }
        }
    });
    let set_norm = ultrametric_set_norm(s);
    let rhs = jsr.rho.mul(set_norm.pow(d as u32 - 1));
    Ok(UltraBocaReport {
        lhs: extremal.0,
        rhs,
        rho: jsr.rho,
        set_norm,
        holds: extremal.0 <= rhs,
        extremal_word: extremal.1,
        rho_witness: jsr.witness,
    })
}

/// Exact row-reduced basis of a subspace of `Q^n`.
struct ExactSpan {
    /// Rows with a leading 1 at `pivots[i]`, zero in every other pivot column.
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl ExactSpan {
    fn new() -> Self {
        Self { rows: Vec::new(), pivots: Vec::new() }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent; returns whether it was.
    fn insert(&mut self, v: &[BigInt]) -> bool {
        let mut v: Vec<BigRational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if !v[c].is_zero() {
                let f = v[c].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &f * r;
                }
            }
        }
        let Some(c) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[c].recip();
        v.iter_mut().for_each(|x| *x *= &inv);
        for row in &mut self.rows {
            if !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(c);
        true
    }
}

/// Span of `{g * b}` over generators `g` and the given matrices `b`, as a
/// list of independent integer matrices.
fn left_products(gens: &[IntMatrix], basis: &[IntMatrix]) -> Vec<IntMatrix> {
    let mut span = ExactSpan::new();
    let mut out = Vec::new();
    for b in basis {
        for g in gens {
            let m = g.mul(b).primitive();
            if span.insert(&m.data) {
                out.push(m);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicNilpotency {
    pub is_nilpotent: bool,
    pub algebra_dim: usize,
    /// `dim W_k` for `k = 1..`, where `W_1` is the algebra and
    /// `W_{k+1} = span(S W_k)`; stops at zero or at `k = d`.
    pub chain: Vec<usize>,
}

/// Exact decision of whether the algebra generated by `S` is nilpotent,
/// equivalently whether every product of `d` members vanishes.
pub fn padic_nilpotency_report(s: &PAdicMatrixSet) -> PAdicNilpotency {
    // Scaling members does not change any span, so work with the integer forms.
    let gens: Vec<IntMatrix> = s.scaled.iter().map(|m| m.clone().primitive()).collect();
    let mut span = ExactSpan::new();
    let mut basis: Vec<IntMatrix> = Vec::new();
    for g in &gens {
        if span.insert(&g.data) {
            basis.push(g.clone());
        }
    }
    let mut frontier = basis.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for b in &frontier {
            for g in &gens {
                let m = g.mul(b).primitive();
                if span.insert(&m.data) {
                    next.push(m);
                }
            }
        }
        basis.extend(next.iter().cloned());
        frontier = next;
    }
    let algebra_dim = span.dim();
    let mut chain = vec![algebra_dim];
    let mut w = basis;
    while !w.is_empty() && chain.len() < s.dim {
        w = left_products(&gens, &w);
        chain.push(w.len());
    }
    PAdicNilpotency { is_nilpotent: w.is_empty(), algebra_dim, chain }
}

pub fn padic_nilpotency_exact(s: &PAdicMatrixSet) -> bool {
    padic_nilpotency_report(s).is_nilpotent
}

impl PAdicJsr {
    /// `rho` as `(numerator, denominator)` of the exponent, `None` for zero.
    pub fn exponent_parts(&self) -> Option<(i64, i64)> {
        self.rho.exponent().map(|e| (*e.numer(), *e.denom()))
    }
}
