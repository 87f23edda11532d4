//! Matrix sets, product words, operator norms and product enumeration.

use crate::eigen;
use crate::matrix::{vector, ComplexMatrix, C64};
use crate::prelude::*;
use crate::{Error, Result, DEFAULT_COND_CAP, DEFAULT_DIM_CAP};

/// A finite, ordered, nonempty list of `d x d` complex matrices.
///
/// Order matters only for [`Word`] indexing. Duplicates are accepted (they do
/// not change any spectral quantity) but reported by [`MatrixSet::warnings`].
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixSet {
    dim: usize,
    members: Vec<ComplexMatrix>,
    warnings: Vec<String>,
}

impl MatrixSet {
    pub fn new(members: Vec<ComplexMatrix>) -> Result<Self> {
        Self::with_dim_cap(members, DEFAULT_DIM_CAP)
    }

    pub fn with_dim_cap(members: Vec<ComplexMatrix>, dim_cap: usize) -> Result<Self> {
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
        let mut warnings = Vec::new();
        for i in 0..members.len() {
            for j in 0..i {
                if members[i] == members[j] {
                    warnings.push(format!("member {i} duplicates member {j}"));
                    break;
                }
            }
        }
        Ok(Self { dim, members, warnings })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Always false: a set has at least one member.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn members(&self) -> &[ComplexMatrix] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &ComplexMatrix {
        &self.members[i]
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn is_real(&self) -> bool {
        self.members.iter().all(ComplexMatrix::is_real)
    }

    /// The set `{c * s}`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            dim: self.dim,
            members: self.members.iter().map(|m| m.scale_real(c)).collect(),
            warnings: self.warnings.clone(),
        }
    }

    /// The set `{g s g^-1}`.
    pub fn conjugated(&self, g: &ComplexMatrix) -> Result<Self> {
        let g_inv = g.inverse()?;
        Ok(Self {
            dim: self.dim,
            members: self.members.iter().map(|s| g.mul(s).mul(&g_inv)).collect(),
            warnings: self.warnings.clone(),
        })
    }

    /// The product set `S^k`, members ordered like words of length `k` in
    /// lexicographic order.
    pub fn power_set(&self, k: usize, cap: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyWord);
        }
        let count = (self.len() as u128).saturating_pow(k as u32);
        if count > cap as u128 {
            return Err(Error::Budget { words: count, cap });
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut idx = vec![0usize; k];
        loop {
            let w = Word::new(idx.clone());
            out.push(self.eval(&w)?);
            let mut pos = k;
            loop {
                if pos == 0 {
                    return MatrixSet::new(out);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < self.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    /// Evaluates `w = (i1, ..., ik)` as `M[ik] * ... * M[i1]`.
    pub fn eval(&self, w: &Word) -> Result<ComplexMatrix> {
        let mut it = w.indices().iter();
        let first = *it.next().ok_or(Error::EmptyWord)?;
        let mut acc = self.checked(first)?.clone();
        for &i in it {
            acc = self.checked(i)?.mul(&acc);
        }
        Ok(acc)
    }

    fn checked(&self, i: usize) -> Result<&ComplexMatrix> {
        self.members.get(i).ok_or(Error::WordIndex { index: i, len: self.len() })
    }
}

/// A nonempty sequence of member indices naming a product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(indices: Vec<usize>) -> Self {
        Self(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Shorter words first, then lexicographic on indices.
    pub fn shortlex_cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

/// The norm `x -> |g x|_2` for an invertible `g`, with its inverse cached.
#[derive(Clone, Debug, PartialEq)]
pub struct Ellipsoid {
    g: ComplexMatrix,
    g_inv: ComplexMatrix,
    cond: f64,
}

impl Ellipsoid {
    pub fn new(g: ComplexMatrix) -> Result<Self> {
        Self::with_cond_cap(g, DEFAULT_COND_CAP)
    }

    pub fn with_cond_cap(g: ComplexMatrix, cap: f64) -> Result<Self> {
        let g_inv = g.inverse()?;
        let cond = spectral_norm(&g)? * spectral_norm(&g_inv)?;
        if !(cond <= cap) {
            return Err(Error::IllConditioned { cond, cap });
        }
        Ok(Self { g, g_inv, cond })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.g
    }

    pub fn inverse(&self) -> &ComplexMatrix {
        &self.g_inv
    }

    pub fn condition_number(&self) -> f64 {
        self.cond
    }
}

/// A vector norm on `C^d` together with its induced operator norm.
#[derive(Clone, Debug, PartialEq)]
pub enum NormSpec {
    /// Euclidean vector norm; operator norm is the largest singular value.
    Spectral,
    /// `l_inf` vector norm; operator norm is the largest absolute row sum.
    MaxRowSum,
    /// `l_1` vector norm; operator norm is the largest absolute column sum.
    MaxColSum,
    /// `x -> |g x|_2`; operator norm of `A` is `|g A g^-1|_2`.
    Ellipsoidal(Ellipsoid),
}

impl NormSpec {
    pub fn name(&self) -> &'static str {
        match self {
            NormSpec::Spectral => "spectral",
            NormSpec::MaxRowSum => "rowsum",
            NormSpec::MaxColSum => "colsum",
            NormSpec::Ellipsoidal(_) => "ellipsoidal",
        }
    }

    pub fn vector_norm(&self, x: &[C64]) -> f64 {
        match self {
            NormSpec::Spectral => vector::norm2(x),
            NormSpec::MaxRowSum => vector::norm_inf(x),
            NormSpec::MaxColSum => vector::norm1(x),
            NormSpec::Ellipsoidal(e) => vector::norm2(&e.g.mul_vec(x)),
        }
    }

    /// A constant `K` with `max_i max(|Re x_i|, |Im x_i|) <= K * |x|`.
    pub(crate) fn coordinate_bound(&self) -> Result<f64> {
        match self {
            NormSpec::Ellipsoidal(e) => spectral_norm(&e.g_inv),
            _ => Ok(1.0),
        }
    }
}

/// Largest singular value.
pub fn spectral_norm(a: &ComplexMatrix) -> Result<f64> {
    if a.dim() == 1 {
        return Ok(a[(0, 0)].norm());
    }
    let gram = a.adjoint().mul(a);
    Ok(eigen::hermitian_max_eigenvalue(&gram)?.max(0.0).sqrt())
}

/// Largest eigenvalue modulus, `Lambda(A)`.
pub fn spectral_radius(a: &ComplexMatrix) -> Result<f64> {
    eigen::spectral_radius(a)
}

/// Induced operator norm of `a` under `n`.
pub fn operator_norm(a: &ComplexMatrix, n: &NormSpec) -> Result<f64> {
    let d = a.dim();
    match n {
        NormSpec::Spectral => spectral_norm(a),
        NormSpec::MaxRowSum => Ok((0..d).map(|i| a.row(i).iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)),
        NormSpec::MaxColSum => Ok((0..d).map(|j| (0..d).map(|i| a[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)),
        NormSpec::Ellipsoidal(e) => spectral_norm(&e.g.mul(a).mul(&e.g_inv)),
    }
}

/// `sup_{s in S} |s|`.
pub fn set_norm(s: &MatrixSet, n: &NormSpec) -> Result<f64> {
    s.members().iter().try_fold(0.0f64, |acc, m| Ok(acc.max(operator_norm(m, n)?)))
}

/// Number of words of length `1..=depth` over `letters` symbols.
pub fn word_count(letters: usize, depth: usize) -> u128 {
    let l = letters as u128;
    let mut total: u128 = 0;
    let mut level: u128 = 1;
    for _ in 0..depth {
        level = level.saturating_mul(l);
        total = total.saturating_add(level);
    }
    total
}

/// Largest depth whose full word tree fits under `cap`.
pub fn max_depth_within(letters: usize, cap: u64) -> usize {
    let mut depth = 0;
    while depth < 4096 && word_count(letters, depth + 1) <= cap as u128 {
        depth += 1;
    }
    depth
}

pub fn check_budget(letters: usize, depth: usize, cap: u64) -> Result<()> {
    let words = word_count(letters, depth);
    if words > cap as u128 {
        return Err(Error::Budget { words, cap });
    }
    Ok(())
}

/// Depth-first stream of `(word, product)` pairs over all words of length
/// `1..=depth`, in lexicographic pre-order.
///
/// With a positive threshold, a word is yielded only if every prefix product
/// (itself included) has norm strictly above it, and pruned subtrees are not
/// expanded. Threshold `0` is exhaustive.
pub struct Products<'a> {
    set: &'a MatrixSet,
    depth: usize,
    threshold: f64,
    norm: NormSpec,
    letters: core::ops::Range<usize>,
    // (word, product, next letter to try)
    stack: Vec<(Vec<usize>, ComplexMatrix, usize)>,
    started: bool,
    error: Option<Error>,
}

impl<'a> Products<'a> {
    fn next_letter_range(&self, depth: usize) -> core::ops::Range<usize> {
        if depth == 0 {
            self.letters.clone()
        } else {
            0..self.set.len()
        }
    }

    /// The first error hit while computing prefix norms, if any; the stream
    /// ends at that point.
    pub fn error(&self) -> Option<&Error> {
        self.error.as_ref()
    }

    fn keep(&mut self, m: &ComplexMatrix) -> bool {
        if self.threshold <= 0.0 {
            return true;
        }
        match operator_norm(m, &self.norm) {
            Ok(v) => v > self.threshold,
            Err(e) => {
                self.error = Some(e);
                false
            }
        }
    }
}

impl Iterator for Products<'_> {
    type Item = (Word, ComplexMatrix);

    fn next(&mut self) -> Option<Self::Item> {
        if !self.started {
            self.started = true;
            let first = self.next_letter_range(0).start;
            self.stack.push((Vec::new(), ComplexMatrix::identity(self.set.dim()), first));
        }
        while self.error.is_none() {
            let top = self.stack.last_mut()?;
            let level = top.0.len();
            let range_end = if level == 0 { self.letters.end } else { self.set.len() };
            if level >= self.depth || top.2 >= range_end {
                self.stack.pop();
                continue;
            }
            let letter = top.2;
            top.2 += 1;
            let mut word = top.0.clone();
            word.push(letter);
            let product =
                if level == 0 { self.set.member(letter).clone() } else { self.set.member(letter).mul(&top.1) };
            if !self.keep(&product) {
                continue;
            }
            self.stack.push((word.clone(), product.clone(), 0));
            return Some((Word(word), product));
        }
        None
    }
}

/// Streams the products of `s` up to `depth`; see [`Products`].
pub fn enumerate_products<'a>(
    s: &'a MatrixSet,
    depth: usize,
    prune: Option<f64>,
    n: &NormSpec,
    cap: u64,
) -> Result<Products<'a>> {
    enumerate_subtree(s, 0..s.len(), depth, prune, n, cap)
}

/// Like [`enumerate_products`], restricted to words whose first letter lies
/// in `first_letters`. Disjoint ranges partition the word tree, so workers
/// can consume them independently.
pub fn enumerate_subtree<'a>(
    s: &'a MatrixSet,
    first_letters: core::ops::Range<usize>,
    depth: usize,
    prune: Option<f64>,
    n: &NormSpec,
    cap: u64,
) -> Result<Products<'a>> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    let threshold = prune.unwrap_or(0.0);
    if !(threshold >= 0.0) {
        return Err(Error::InvalidArgument("prune threshold must be nonnegative".into()));
    }
    if first_letters.end > s.len() || first_letters.start > first_letters.end {
        return Err(Error::InvalidArgument("first-letter range out of bounds".into()));
    }
    check_budget(s.len(), depth, cap)?;
    Ok(Products {
        set: s,
        depth,
        threshold,
        norm: n.clone(),
        letters: first_letters,
        stack: Vec::new(),
        started: false,
        error: None,
    })
}
