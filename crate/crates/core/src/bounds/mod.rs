//! Two-sided estimates of the joint spectral radius.
//!
//! For every depth `k`, `max_{|w|=k} Λ(w)^{1/k} <= rho(S) <= |S^k|^{1/k}`.
//! [`jsr_estimate`] walks the word tree once and collects both sides. It
//! prunes subtrees that provably cannot reach the running lower bound, and
//! the pruning never changes either result.

mod barabanov;
mod conjugation;
mod nilpotency;
mod rota_strang;

pub use barabanov::{barabanov_approx, barabanov_approx_with, PolytopeNorm};
pub use conjugation::{conjugation_search, ConjugationResult};
pub use nilpotency::{nilpotency_test, nilpotency_test_with, NilpotencyReport, RANK_BAND};
pub use rota_strang::{rota_strang_norm, RotaStrang};

use crate::eigen;
use crate::matrix::ComplexMatrix;
use crate::prelude::*;
use crate::set::{self, operator_norm, set_norm, MatrixSet, NormSpec, Word};
use crate::{Error, Result, DEFAULT_WORD_CAP, TOL_REL};

/// Relative margin on pruning decisions. Far above floating round-off in the
/// norms, so a pruned word is never within tie distance of the lower bound.
const PRUNE_MARGIN: f64 = 1e-7;

/// A certified interval `[lower, upper]` for `rho(S)` with the data that
/// produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct JsrInterval {
    pub lower: f64,
    pub upper: f64,
    /// Word attaining `lower` as `Λ(eval(w))^{1/|w|}`.
    pub lower_witness: Word,
    /// Length `k` attaining `upper` as `|S^k|^{1/k}`.
    pub upper_depth: usize,
    pub norm_used: NormSpec,
    pub diagnostics: BTreeMap<String, f64>,
}

impl JsrInterval {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    /// Whether the estimate stopped short of the requested depth.
    pub fn budget_exceeded(&self) -> bool {
        self.diagnostics.get("budget_exceeded").is_some_and(|&v| v != 0.0)
    }

    /// True when `r` lies in the interval, up to `tol` relative slack.
    pub fn contains(&self, r: f64, tol: f64) -> bool {
        r >= self.lower * (1.0 - tol) && r <= self.upper * (1.0 + tol)
    }
}

/// Settings for [`jsr_estimate`].
#[derive(Clone, Debug)]
pub struct EstimateConfig {
    pub depth: usize,
    pub norm: NormSpec,
    /// Maximum number of words the walk may visit. A depth that needs more is
    /// clamped and flagged rather than rejected.
    pub cap: u64,
    /// Stop deepening once `upper - lower` falls to this width.
    pub target_width: Option<f64>,
    /// Disable subtree pruning (for cross-checks; results are identical).
    pub exhaustive: bool,
}

impl EstimateConfig {
    pub fn new(depth: usize) -> Self {
        Self { depth, norm: NormSpec::Spectral, cap: DEFAULT_WORD_CAP, target_width: None, exhaustive: false }
    }

    pub fn norm(mut self, norm: NormSpec) -> Self {
        self.norm = norm;
        self
    }

    pub fn cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn target_width(mut self, w: f64) -> Self {
        self.target_width = Some(w);
        self
    }

    pub fn exhaustive(mut self, yes: bool) -> Self {
        self.exhaustive = yes;
        self
    }
}

/// Running argmax of `Λ(w)^{1/|w|}` with the deterministic tie rule: a new
/// value wins outright only above `best * (1 + TOL_REL)`; within tolerance
/// the shorter, then lexicographically smaller, word wins.
#[derive(Clone, Debug)]
pub(crate) struct Champion {
    pub value: f64,
    pub word: Option<Vec<usize>>,
}

impl Champion {
    pub fn new() -> Self {
        Self { value: 0.0, word: None }
    }

    pub fn offer(&mut self, value: f64, word: &[usize]) {
        let Some(best) = &self.word else {
            self.value = value;
            self.word = Some(word.to_vec());
            return;
        };
        if value > self.value * (1.0 + TOL_REL) {
            self.value = value;
            self.word = Some(word.to_vec());
        } else if (value - self.value).abs() <= TOL_REL * self.value
            && (word.len(), word) < (best.len(), best.as_slice())
        {
            self.value = self.value.max(value);
            self.word = Some(word.to_vec());
        }
    }
}

struct Walk {
    /// `level_max[k-1] = |S^k|` over visited words of length `k`.
    level_max: Vec<f64>,
    champion: Champion,
    visited: u64,
    pruned: u64,
}

/// One depth-first pass over all words of length `1..=depth`.
///
/// With `prune`, the subtree under a prefix `P` of length `j` is skipped when
/// `|P| |S|^{depth-j} < L^depth (1 - margin)` for the running lower bound
/// `L`. Every word below `P` then has `Λ^{1/k} < L` and norm below
/// `L^k <= rho^k <= |S^k|`, so neither bound can change.
fn walk(s: &MatrixSet, depth: usize, norm: &NormSpec, prune: bool, want_upper: bool) -> Result<Walk> {
    let set_n = set_norm(s, norm)?;
    let ln_set = set_n.ln();
    let mut out = Walk { level_max: vec![0.0; depth], champion: Champion::new(), visited: 0, pruned: 0 };
    let n = s.len();
    let mut word: Vec<usize> = Vec::with_capacity(depth);
    // stack[j] holds the product of the first j letters; stack[0] is unused
    let mut stack: Vec<ComplexMatrix> = Vec::with_capacity(depth + 1);
    stack.push(ComplexMatrix::identity(s.dim()));
    let mut next: Vec<usize> = vec![0];
    while let Some(&letter) = next.last() {
        let level = word.len();
        if letter >= n || level >= depth {
            next.pop();
            if word.pop().is_some() {
                stack.pop();
            }
            continue;
        }
        *next.last_mut().unwrap() += 1;
        let product = if level == 0 { s.member(letter).clone() } else { s.member(letter).mul(&stack[level]) };
        word.push(letter);
        out.visited += 1;
        let k = word.len();

        let needs_norm = want_upper || prune;
        let p_norm = if needs_norm { operator_norm(&product, norm)? } else { 0.0 };
        if want_upper {
            out.level_max[k - 1] = out.level_max[k - 1].max(p_norm);
        }
        let lam = eigen::spectral_radius(&product)?;
        out.champion.offer(root(lam, k), &word);

        let descend = k < depth
            && !(prune && {
                let l = out.champion.value;
                l > 0.0
                    && p_norm.ln() + (depth - k) as f64 * ln_set < depth as f64 * (l.ln() + (1.0 - PRUNE_MARGIN).ln())
            });
        if descend {
            stack.push(product);
            next.push(0);
        } else {
            if k < depth {
                out.pruned += 1;
            }
            word.pop();
        }
    }
    Ok(out)
}

fn root(x: f64, k: usize) -> f64 {
    match k {
        1 => x,
        2 => x.sqrt(),
        _ if x == 0.0 => 0.0,
        _ => x.powf(1.0 / k as f64),
    }
}

/// `min_{1<=k<=depth} |S^k|^{1/k}` and the minimizing `k` (smallest on ties).
fn best_upper(level_max: &[f64]) -> (f64, usize) {
    let mut best = (f64::INFINITY, 1);
    for (i, &m) in level_max.iter().enumerate() {
        let v = root(m, i + 1);
        if v < best.0 {
            best = (v, i + 1);
        }
    }
    best
}

fn check_depth(depth: usize) -> Result<()> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    Ok(())
}

/// `min_{1<=k<=depth} |S^k|_n^{1/k}`, an upper bound on `rho(S)`.
pub fn upper_bound(s: &MatrixSet, depth: usize, n: &NormSpec) -> Result<f64> {
    upper_bound_with_cap(s, depth, n, DEFAULT_WORD_CAP)
}

pub fn upper_bound_with_cap(s: &MatrixSet, depth: usize, n: &NormSpec, cap: u64) -> Result<f64> {
    check_depth(depth)?;
    set::check_budget(s.len(), depth, cap)?;
    let mut level_max = vec![0.0f64; depth];
    for (w, p) in set::enumerate_products(s, depth, None, n, cap)? {
        let k = w.len();
        level_max[k - 1] = level_max[k - 1].max(operator_norm(&p, n)?);
    }
    Ok(best_upper(&level_max).0)
}

/// `max_{|w|<=depth} Λ(eval(w))^{1/|w|}` with its witness word, a lower bound
/// on `rho(S)`.
pub fn lower_bound(s: &MatrixSet, depth: usize) -> Result<(f64, Word)> {
    lower_bound_with_cap(s, depth, DEFAULT_WORD_CAP)
}

pub fn lower_bound_with_cap(s: &MatrixSet, depth: usize, cap: u64) -> Result<(f64, Word)> {
    check_depth(depth)?;
    set::check_budget(s.len(), depth, cap)?;
    let w = walk(s, depth, &NormSpec::Spectral, true, false)?;
    Ok((w.champion.value, Word::new(w.champion.word.unwrap_or_default())))
}

/// Both bounds from one pruned walk.
///
/// A depth beyond the word budget is clamped to the deepest feasible one and
/// `budget_exceeded` is set in the diagnostics; only a budget too small for
/// depth 1 is an error.
pub fn jsr_estimate(s: &MatrixSet, config: &EstimateConfig) -> Result<JsrInterval> {
    check_depth(config.depth)?;
    let feasible = set::max_depth_within(s.len(), config.cap);
    if feasible == 0 {
        return Err(Error::Budget { words: set::word_count(s.len(), 1), cap: config.cap });
    }
    let depth = config.depth.min(feasible);

    let schedule: Vec<usize> = match config.target_width {
        None => vec![depth],
        Some(_) => {
            let mut v = Vec::new();
            let mut k = 1;
            while k < depth {
                v.push(k);
                k *= 2;
            }
            v.push(depth);
            v
        }
    };

    let mut result = None;
    for &d in &schedule {
        let w = walk(s, d, &config.norm, !config.exhaustive, true)?;
        let (upper, upper_depth) = best_upper(&w.level_max);
        let mut diagnostics = BTreeMap::new();
        diagnostics.insert("depth_requested".to_string(), config.depth as f64);
        diagnostics.insert("depth_reached".to_string(), d as f64);
        diagnostics.insert("words_visited".to_string(), w.visited as f64);
        diagnostics.insert("subtrees_pruned".to_string(), w.pruned as f64);
        diagnostics.insert("budget_exceeded".to_string(), if depth < config.depth { 1.0 } else { 0.0 });
        let interval = JsrInterval {
            lower: w.champion.value,
            upper,
            lower_witness: Word::new(w.champion.word.unwrap_or_default()),
            upper_depth,
            norm_used: config.norm.clone(),
            diagnostics,
        };
        let done = config.target_width.is_some_and(|t| interval.width() <= t);
        result = Some(interval);
        if done {
            break;
        }
    }
    Ok(result.expect("schedule is nonempty"))
}
