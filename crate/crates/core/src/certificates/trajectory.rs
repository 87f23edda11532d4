//! Trajectory-return search for high-eigenvalue words.
//!
//! Follow `x_{k+1} = s x_k`, picking at each step the member that maximizes
//! the working norm of the image. When two normalized points `x_n`,
//! `x_{n'}` nearly coincide, the product `A = s_{n'} ... s_{n+1}` nearly
//! fixes the direction of `x_n`, and the residual certificate turns that
//! into a lower bound on `Λ(A)`.
//!
//! The set should be scaled so `rho(S)` is about 1 under the working norm.

use crate::bounds::PolytopeNorm;
use crate::matrix::{vector, C64};
use crate::prelude::*;
use crate::random;
use crate::set::{operator_norm, MatrixSet, NormSpec, Word};
use crate::{Error, Result};

use super::residual::{residual_certificate, ResidualCertificate};

const MAX_RESTARTS: usize = 8;
const ALL_PAIRS_LIMIT: usize = 4096;
const CERTIFIED_GAPS: usize = 64;
const TIE_TOL: f64 = 1e-6;

/// The norm steering the greedy trajectory.
#[derive(Clone, Debug)]
pub enum WorkingNorm {
    Spec(NormSpec),
    /// An approximate Barabanov norm. Certificates then use the Euclidean
    /// norm, since the polytope norm has no exact operator norm.
    Polytope(PolytopeNorm),
}

impl WorkingNorm {
    fn vector_norm(&self, x: &[C64]) -> f64 {
        match self {
            WorkingNorm::Spec(n) => n.vector_norm(x),
            WorkingNorm::Polytope(p) => p.eval(x),
        }
    }

    fn certificate_norm(&self) -> NormSpec {
        match self {
            WorkingNorm::Spec(n) => n.clone(),
            WorkingNorm::Polytope(_) => NormSpec::Spectral,
        }
    }
}

impl From<NormSpec> for WorkingNorm {
    fn from(n: NormSpec) -> Self {
        WorkingNorm::Spec(n)
    }
}

#[derive(Clone, Debug)]
pub struct TrajectoryConfig {
    /// Longest trajectory segment.
    pub maxlen: usize,
    pub x0: Option<Vec<C64>>,
    pub seed: u64,
    /// Sets the return radius `delta = (eps/4)^d` used by the spatial hash
    /// on long trajectories.
    pub eps: f64,
}

impl TrajectoryConfig {
    pub fn new(maxlen: usize) -> Self {
        Self { maxlen, x0: None, seed: 0, eps: 0.25 }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn x0(mut self, x0: Vec<C64>) -> Self {
        self.x0 = Some(x0);
        self
    }

    pub fn eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }
}

/// A return pair turned into a certificate.
#[derive(Clone, Debug)]
pub struct ReturnCandidate {
    pub word: Word,
    /// Working-norm distance between the two normalized points.
    pub distance: f64,
    pub certificate: ResidualCertificate,
    /// Norm of the unnormalized product; `scale * bound <= Λ(eval(word))`.
    pub scale: f64,
}

#[derive(Clone, Debug)]
pub struct TrajectoryResult {
    pub best: ReturnCandidate,
    /// Every certified candidate, best first.
    pub candidates: Vec<ReturnCandidate>,
    pub diagnostics: BTreeMap<String, f64>,
}

impl TrajectoryResult {
    pub fn word(&self) -> &Word {
        &self.best.word
    }

    pub fn certificate(&self) -> &ResidualCertificate {
        &self.best.certificate
    }
}

struct Segment {
    /// Phase-fixed points of unit working norm.
    points: Vec<Vec<C64>>,
    /// `letters[k]` maps `points[k]` to `points[k+1]`.
    letters: Vec<usize>,
}

fn run_segment(s: &MatrixSet, norm: &WorkingNorm, start: Vec<C64>, maxlen: usize) -> Segment {
    let mut x = start;
    let mut seg = Segment { points: Vec::new(), letters: Vec::new() };
    let n0 = norm.vector_norm(&x);
    if !(n0 > 0.0) {
        return seg;
    }
    x = vector::scale(&x, C64::new(1.0 / n0, 0.0));
    vector::fix_phase(&mut x);
    seg.points.push(x.clone());
    let mut log_norm = 0.0f64;
    for _ in 0..maxlen {
        let mut best: Option<(usize, f64, Vec<C64>)> = None;
        for (i, m) in s.members().iter().enumerate() {
            let y = m.mul_vec(&x);
            let v = norm.vector_norm(&y);
            if best.as_ref().is_none_or(|b| v > b.1) {
                best = Some((i, v, y));
            }
        }
        let (i, v, y) = best.expect("sets are nonempty");
        if !(v > 0.0) {
            break;
        }
        log_norm += v.ln();
        x = vector::scale(&y, C64::new(1.0 / v, 0.0));
        vector::fix_phase(&mut x);
        seg.letters.push(i);
        seg.points.push(x.clone());
        if log_norm < 0.5f64.ln() {
            break;
        }
    }
    seg
}

/// Best pair `(n, n')` for each gap `n' - n`, by working-norm distance.
fn best_pairs(seg: &Segment, norm: &WorkingNorm, delta: f64) -> BTreeMap<usize, (f64, usize)> {
    let mut best: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
    let mut consider = |i: usize, j: usize| {
        let dist = norm.vector_norm(&vector::sub(&seg.points[i], &seg.points[j]));
        let entry = best.entry(j - i).or_insert((f64::INFINITY, i));
        if dist < entry.0 {
            *entry = (dist, i);
        }
    };
    let len = seg.points.len();
    if len <= ALL_PAIRS_LIMIT {
        for j in 1..len {
            for i in 0..j {
                consider(i, j);
            }
        }
    } else {
        let side = delta / 2.0;
        let mut grid: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (j, p) in seg.points.iter().enumerate() {
            let key: Vec<i64> =
                p.iter().flat_map(|z| [(z.re / side).floor() as i64, (z.im / side).floor() as i64]).collect();
            let bucket = grid.entry(key).or_default();
            for &i in bucket.iter() {
                consider(i, j);
            }
            bucket.push(j);
        }
    }
    best
}

fn certify(
    s: &MatrixSet,
    seg: &Segment,
    n: usize,
    n2: usize,
    distance: f64,
    cert_norm: &NormSpec,
) -> Result<Option<ReturnCandidate>> {
    let word = Word::new(seg.letters[n..n2].to_vec());
    let raw = s.eval(&word)?;
    let scale = operator_norm(&raw, cert_norm)?;
    if !(scale > 0.0) {
        return Ok(None);
    }
    let a = raw.scale_real(1.0 / scale);
    let xn = cert_norm.vector_norm(&seg.points[n]);
    let x = vector::scale(&seg.points[n], C64::new(1.0 / xn, 0.0));
    let ax = a.mul_vec(&x);
    let lambda = vector::inner(&x, &ax) / vector::inner(&x, &x);
    match residual_certificate(&a, &x, lambda, cert_norm) {
        Ok(certificate) => Ok(Some(ReturnCandidate { word, distance, certificate, scale })),
        Err(Error::Precondition(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Runs the greedy trajectory with up to 8 restarts and returns the best
/// certificate over the 64 closest-returning gaps of each segment.
///
/// Candidates are ranked by certified bound; within `1e-6` the shorter word
/// wins. A best return farther than 1 apart is flagged as `no_return` in the
/// diagnostics, and the certificate is then usually vacuous.
pub fn trajectory_return_search(
    s: &MatrixSet,
    norm: &WorkingNorm,
    config: &TrajectoryConfig,
) -> Result<TrajectoryResult> {
    if config.maxlen < 2 {
        return Err(Error::InvalidArgument("maxlen must be at least 2".into()));
    }
    let d = s.dim();
    if let Some(x0) = &config.x0 {
        if x0.len() != d {
            return Err(Error::InvalidArgument(format!("x0 has length {}, expected {d}", x0.len())));
        }
    }
    let cert_norm = norm.certificate_norm();
    let delta = (config.eps / 4.0).powi(d as i32);
    let mut rng = random::rng(config.seed);

    let mut candidates: Vec<ReturnCandidate> = Vec::new();
    let mut segments = 0usize;
    let mut steps = 0usize;
    let mut closest = f64::INFINITY;
    for attempt in 0..=MAX_RESTARTS {
        let start = match (&config.x0, attempt) {
            (Some(x0), 0) => x0.clone(),
            _ => random::unit_vector(d, &mut rng),
        };
        let seg = run_segment(s, norm, start, config.maxlen);
        segments += 1;
        steps += seg.letters.len();
        let pairs = best_pairs(&seg, norm, delta);
        let mut ranked: Vec<(usize, f64, usize)> = pairs.into_iter().map(|(g, (dist, i))| (g, dist, i)).collect();
        ranked.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        for &(gap, dist, i) in ranked.iter().take(CERTIFIED_GAPS) {
            closest = closest.min(dist);
            if let Some(c) = certify(s, &seg, i, i + gap, dist, &cert_norm)? {
                candidates.push(c);
            }
        }
        if seg.letters.len() == config.maxlen {
            break;
        }
    }
    if candidates.is_empty() {
        return Err(Error::Precondition("trajectory produced no nonzero return product".into()));
    }

    candidates.sort_by(|a, b| b.certificate.bound.total_cmp(&a.certificate.bound));
    let top = candidates[0].certificate.bound;
    let best = candidates
        .iter()
        .filter(|c| c.certificate.bound >= top - TIE_TOL)
        .min_by(|a, b| a.word.shortlex_cmp(&b.word))
        .expect("top candidate qualifies")
        .clone();

    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("segments".to_string(), segments as f64);
    diagnostics.insert("steps".to_string(), steps as f64);
    diagnostics.insert("closest_return".to_string(), closest);
    diagnostics.insert("no_return".to_string(), if closest > 1.0 { 1.0 } else { 0.0 });
    Ok(TrajectoryResult { best, candidates, diagnostics })
}
