//! Checkers for three explicit inequalities between `rho(S)`, spectral radii
//! of products and norms of product sets.
//!
//! `rho` is only known through an interval, so each check substitutes the
//! endpoint that makes the inequality hardest to satisfy (CONFIRMED) or
//! easiest (REFUTED); anything between is INCONCLUSIVE. Comparisons back off
//! by `tol` against the verdict being claimed. A run whose depth was clamped
//! by the word budget can confirm but never refute.
//!
//! - `Polbd`: `max_{k<=2d^3} Λ(S^k)^{1/k} >= rho(S) / (2^8 d^5)`.
//! - `BocaNew`: `|S^{n1}| <= 2^7 d^4 rho(S) |S|^{n1-1}` with `n1 = 2d^2`.
//! - `BgEl`: with `rho(S) = 1`, some `k <= n` has `Λ(S^k) >= 1 - eps` once
//!   `n >= eps^{-d^2} 3^d 4^{d^2}`.

use core::fmt;

use crate::bounds::{lower_bound_with_cap, JsrInterval};
use crate::prelude::*;
use crate::set::{self, operator_norm, set_norm, spectral_radius, MatrixSet, NormSpec, Word};
use crate::{Error, Result, DEFAULT_WORD_CAP, TOL_REL};

use super::trajectory::{trajectory_return_search, TrajectoryConfig, WorkingNorm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    Polbd,
    BocaNew,
    BgEl,
}

impl TheoremId {
    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Polbd => "POLBD",
            TheoremId::BocaNew => "BOCA_NEW",
            TheoremId::BgEl => "BG_EL",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Confirmed,
    Refuted,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Confirmed => "CONFIRMED",
            Verdict::Refuted => "REFUTED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Outcome of one inequality check.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub lhs: f64,
    /// The right-hand side with `rho` replaced by `interval.lower`.
    pub rhs_at_lower: f64,
    /// The right-hand side with `rho` replaced by `interval.upper`.
    pub rhs_at_upper: f64,
    pub verdict: Verdict,
    pub witnesses: Vec<Word>,
    pub constants: BTreeMap<String, f64>,
    /// Depths and lengths actually used.
    pub budget: BTreeMap<String, f64>,
    /// True when the theorem's own depth or length was cut down.
    pub clamped: bool,
    pub notes: Vec<String>,
}

/// Configuration shared by the checkers.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub cap: u64,
    pub tol: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self { cap: DEFAULT_WORD_CAP, tol: TOL_REL }
    }
}

fn powi(x: f64, k: usize) -> f64 {
    x.powi(k as i32)
}

/// `max_{k<=2d^3} Λ(S^k)^{1/k} >= rho / (2^8 d^5)`.
pub fn check_polbd(s: &MatrixSet, interval: &JsrInterval, cfg: &CheckConfig) -> Result<TheoremReport> {
    let d = s.dim();
    let c = 1.0 / (256.0 * powi(d as f64, 5));
    let full = 2 * d * d * d;
    let depth = full.min(set::max_depth_within(s.len(), cfg.cap));
    if depth == 0 {
        return Err(Error::Budget { words: set::word_count(s.len(), 1), cap: cfg.cap });
    }
    let clamped = depth < full;
    let (lhs, witness) = lower_bound_with_cap(s, depth, cfg.cap)?;
    let rhs_at_lower = c * interval.lower;
    let rhs_at_upper = c * interval.upper;
    let tol = cfg.tol;
    let verdict = if lhs * (1.0 - tol) >= rhs_at_upper * (1.0 + tol) {
        Verdict::Confirmed
    } else if !clamped && lhs * (1.0 + tol) < rhs_at_lower * (1.0 - tol) {
        Verdict::Refuted
    } else {
        Verdict::Inconclusive
    };
    let mut notes = Vec::new();
    if clamped {
        notes.push(format!("depth clamped from {full} to {depth} by the word budget"));
    }
    Ok(TheoremReport {
        theorem: TheoremId::Polbd,
        lhs,
        rhs_at_lower,
        rhs_at_upper,
        verdict,
        witnesses: vec![witness],
        constants: BTreeMap::from([("c".to_string(), c)]),
        budget: BTreeMap::from([("depth".to_string(), depth as f64), ("depth_required".to_string(), full as f64)]),
        clamped,
        notes,
    })
}

/// `|S^{n1}|_n <= 2^7 d^4 rho |S|_n^{n1-1}` with `n1 = 2 d^2`.
///
/// When `S^{n1}` is too large to enumerate, the left side is replaced by
/// the submultiplicative bound `|S^k|^q |S^r|` (`n1 = qk + r`, `k` the
/// deepest feasible length), which can still confirm.
pub fn check_boca_new(s: &MatrixSet, n: &NormSpec, interval: &JsrInterval, cfg: &CheckConfig) -> Result<TheoremReport> {
    let d = s.dim();
    let n1 = 2 * d * d;
    let c = 128.0 * powi(d as f64, 4);
    let s_norm = set_norm(s, n)?;
    let feasible = set::max_depth_within(s.len(), cfg.cap);
    if feasible == 0 {
        return Err(Error::Budget { words: set::word_count(s.len(), 1), cap: cfg.cap });
    }
    let clamped = feasible < n1;
    let k = n1.min(feasible);

    // |S^j| for j <= k, and the word attaining |S^k|
    let mut level = vec![0.0f64; k + 1];
    let mut argmax: Option<Word> = None;
    for (w, p) in set::enumerate_products(s, k, None, n, cfg.cap)? {
        let j = w.len();
        let v = operator_norm(&p, n)?;
        if v > level[j] || (j == k && argmax.is_none()) {
            level[j] = level[j].max(v);
            if j == k {
                argmax = Some(w);
            }
        }
    }
    let lhs = if clamped {
        let (q, r) = (n1 / k, n1 % k);
        powi(level[k], q) * if r == 0 { 1.0 } else { level[r] }
    } else {
        level[n1]
    };

    let tail = powi(s_norm, n1 - 1);
    let rhs_at_lower = c * interval.lower * tail;
    let rhs_at_upper = c * interval.upper * tail;
    let tol = cfg.tol;
    let verdict = if lhs * (1.0 + tol) <= rhs_at_lower * (1.0 - tol) {
        Verdict::Confirmed
    } else if !clamped && lhs * (1.0 - tol) > rhs_at_upper * (1.0 + tol) {
        Verdict::Refuted
    } else {
        Verdict::Inconclusive
    };
    let mut notes = Vec::new();
    if clamped {
        notes.push(format!("|S^{n1}| bounded through |S^{k}| since the full power exceeds the word budget"));
    }
    Ok(TheoremReport {
        theorem: TheoremId::BocaNew,
        lhs,
        rhs_at_lower,
        rhs_at_upper,
        verdict,
        witnesses: argmax.into_iter().collect(),
        constants: BTreeMap::from([
            ("c".to_string(), c),
            ("n1".to_string(), n1 as f64),
            ("set_norm".to_string(), s_norm),
            ("ratio_at_lower".to_string(), if rhs_at_lower > 0.0 { lhs / rhs_at_lower } else { f64::NAN }),
        ]),
        budget: BTreeMap::from([("depth".to_string(), k as f64), ("depth_required".to_string(), n1 as f64)]),
        clamped,
        notes,
    })
}

/// `n0(d) = 3^d 4^{d^2}`, as a float (it overflows integers fast).
pub fn n0(d: usize) -> f64 {
    powi(3.0, d) * powi(4.0, d * d)
}

/// Searches for a word `w` with `Λ(eval(w)) >= (1 - eps) rho^{|w|}`.
///
/// `rho` is taken as `interval.upper`, the endpoint making the claim
/// strongest. The set is scaled by `1/upper` before the search, so the
/// reported values are in units where that endpoint is 1.
///
/// For `d = 1` the required length `ceil(n0(1)/eps)` is always within reach
/// and the check is exact: `Λ(S^1) = rho`. For `d >= 2` the trajectory
/// search of length `maxlen` stands in for the theorem's length, so a
/// missing witness gives INCONCLUSIVE, never REFUTED.
pub fn check_bg_el(
    s: &MatrixSet,
    interval: &JsrInterval,
    eps: f64,
    maxlen: usize,
    seed: u64,
    cfg: &CheckConfig,
) -> Result<TheoremReport> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument("eps must lie in (0, 1)".into()));
    }
    let d = s.dim();
    let upper = interval.upper;
    let required = (powi(1.0 / eps, d * d) * n0(d)).ceil();
    let mut constants =
        BTreeMap::from([("eps".to_string(), eps), ("n0".to_string(), n0(d)), ("n_required".to_string(), required)]);
    let mut notes = Vec::new();
    let tol = cfg.tol;

    if !(upper > 0.0) {
        notes.push("upper bound is 0, so rho = 0 and the theorem does not apply".to_string());
        return Ok(TheoremReport {
            theorem: TheoremId::BgEl,
            lhs: 0.0,
            rhs_at_lower: 0.0,
            rhs_at_upper: 0.0,
            verdict: Verdict::Inconclusive,
            witnesses: Vec::new(),
            constants,
            budget: BTreeMap::new(),
            clamped: false,
            notes,
        });
    }

    // candidate words with their normalized spectral radius Λ(w) / upper^|w|
    let mut candidates: Vec<(Word, f64)> = Vec::new();
    let clamped;
    let scaled = s.scaled(1.0 / upper);
    if d == 1 {
        clamped = false;
        for i in 0..s.len() {
            let w = Word::new(vec![i]);
            candidates.push((w.clone(), spectral_radius(&scaled.eval(&w)?)?));
        }
    } else {
        clamped = true;
        notes.push(format!(
            "trajectory length {maxlen} stands in for the required {required:e}; a missing witness is not a refutation"
        ));
        let cfg_t = TrajectoryConfig::new(maxlen.max(2)).seed(seed).eps(eps);
        match trajectory_return_search(&scaled, &WorkingNorm::Spec(NormSpec::Spectral), &cfg_t) {
            Ok(r) => {
                for c in r.candidates {
                    let lam = spectral_radius(&scaled.eval(&c.word)?)?;
                    candidates.push((c.word, lam));
                }
            }
            Err(Error::Precondition(m)) => notes.push(m),
            Err(e) => return Err(e),
        }
    }

    // best normalized radius; ties go to the shorter word
    let best = candidates.into_iter().reduce(|a, b| {
        if b.1 > a.1 * (1.0 + tol) || ((b.1 - a.1).abs() <= tol * a.1 && b.0.shortlex_cmp(&a.0).is_lt()) {
            b
        } else {
            a
        }
    });
    let (lhs, witnesses, len) = match best {
        Some((w, v)) => (v, vec![w.clone()], w.len()),
        None => (0.0, Vec::new(), 1),
    };
    let rhs_at_upper = 1.0 - eps;
    let rhs_at_lower = (1.0 - eps) * powi(interval.lower / upper, len);
    let verdict = if lhs * (1.0 - tol) >= rhs_at_upper * (1.0 + tol) {
        Verdict::Confirmed
    } else if !clamped && lhs * (1.0 + tol) < rhs_at_lower * (1.0 - tol) {
        Verdict::Refuted
    } else {
        Verdict::Inconclusive
    };
    constants.insert("witness_length".to_string(), len as f64);
    Ok(TheoremReport {
        theorem: TheoremId::BgEl,
        lhs,
        rhs_at_lower,
        rhs_at_upper,
        verdict,
        witnesses,
        constants,
        budget: BTreeMap::from([("maxlen".to_string(), maxlen as f64)]),
        clamped,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{jsr_estimate, EstimateConfig};
    use crate::families;
    use crate::matrix::ComplexMatrix;

    fn interval(s: &MatrixSet, depth: usize) -> JsrInterval {
        jsr_estimate(s, &EstimateConfig::new(depth)).unwrap()
    }

    #[test]
    fn polbd_examples() {
        let id = MatrixSet::new(vec![ComplexMatrix::identity(2)]).unwrap();
        let r = check_polbd(&id, &interval(&id, 4), &CheckConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
        assert_eq!(r.lhs, 1.0);

        let shift = families::shift(2).unwrap();
        let r = check_polbd(&shift, &interval(&shift, 6), &CheckConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
        assert_eq!(r.budget["depth"], 16.0);
        assert!((r.lhs - 1.0).abs() < 1e-12);
        assert!((r.rhs_at_upper - 1.0 / (256.0 * 32.0)).abs() < 1e-12);
    }

    #[test]
    fn boca_examples() {
        let id = MatrixSet::new(vec![ComplexMatrix::identity(2)]).unwrap();
        let r = check_boca_new(&id, &NormSpec::Spectral, &interval(&id, 4), &CheckConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
        assert_eq!(r.lhs, 1.0);

        let e12 = MatrixSet::new(vec![ComplexMatrix::elementary(2, 0, 1)]).unwrap();
        let r = check_boca_new(&e12, &NormSpec::Spectral, &interval(&e12, 4), &CheckConfig::default()).unwrap();
        assert_eq!((r.lhs, r.verdict), (0.0, Verdict::Confirmed));

        let pair = families::unipotent_pair();
        let r = check_boca_new(&pair, &NormSpec::Spectral, &interval(&pair, 8), &CheckConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
        assert!(!r.clamped);
        assert_eq!(r.witnesses[0].len(), 8);
    }

    #[test]
    fn bg_el_examples() {
        let one = MatrixSet::new(vec![ComplexMatrix::identity(1)]).unwrap();
        let r = check_bg_el(&one, &interval(&one, 2), 0.5, 8, 0, &CheckConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
        assert_eq!(r.constants["n_required"], 24.0);
        assert_eq!(r.witnesses[0].len(), 1);

        let mix = families::unitary_mix(2, &[0.5, 1.0 / 3.0], 4, 9).unwrap();
        let r = check_bg_el(&mix, &interval(&mix, 4), 0.25, 64, 1, &CheckConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);

        let golden = MatrixSet::new(vec![families::rotation(core::f64::consts::PI * (5f64.sqrt() - 1.0))]).unwrap();
        let r = check_bg_el(&golden, &interval(&golden, 2), 0.01, 200, 2, &CheckConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
    }
}
