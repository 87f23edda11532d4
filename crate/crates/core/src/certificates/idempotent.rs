//! Search for products that are nearly idempotent.

use crate::set::{self, spectral_norm, MatrixSet, NormSpec, Word};
use crate::Result;

/// Words with `|eval(w)|_2 >= 1/2` minimizing `|w^2 - w|_2 / |w|_2`.
///
/// Searches every word up to `maxlen`, or up to the deepest length the word
/// budget allows. Returns the best word (shortest, then lexicographically
/// first among equal defects) if its defect is at most `tol`.
pub fn near_idempotent_search(s: &MatrixSet, maxlen: usize, tol: f64, cap: u64) -> Result<Option<(Word, f64)>> {
    let depth = maxlen.min(set::max_depth_within(s.len(), cap));
    if depth == 0 {
        return Ok(None);
    }
    let mut best: Option<(Word, f64)> = None;
    for (w, p) in set::enumerate_products(s, depth, None, &NormSpec::Spectral, cap)? {
        let n = spectral_norm(&p)?;
        if n < 0.5 {
            continue;
        }
        let defect = spectral_norm(&p.mul(&p).sub(&p))? / n;
        let better = match &best {
            None => true,
            Some((bw, bd)) => defect < *bd || (defect == *bd && w.shortlex_cmp(bw).is_lt()),
        };
        if better {
            best = Some((w, defect));
        }
    }
    Ok(best.filter(|(_, d)| *d <= tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::matrix::ComplexMatrix;
    use crate::DEFAULT_WORD_CAP;

    #[test]
    fn idempotent_member() {
        let s = MatrixSet::new(vec![ComplexMatrix::elementary(2, 0, 0)]).unwrap();
        let (w, d) = near_idempotent_search(&s, 4, 1e-12, DEFAULT_WORD_CAP).unwrap().unwrap();
        assert_eq!((w.indices(), d), (&[0][..], 0.0));
    }

    #[test]
    fn elementary_family() {
        let s = families::elementary(2).unwrap();
        let (w, d) = near_idempotent_search(&s, 3, 1e-12, DEFAULT_WORD_CAP).unwrap().unwrap();
        assert_eq!((w.len(), d), (1, 0.0));
        assert_eq!(w.indices(), &[0]);
    }

    #[test]
    fn golden_rotation_has_none() {
        let angle = core::f64::consts::PI * (3.0 - 5f64.sqrt());
        let s = MatrixSet::new(vec![families::rotation(angle)]).unwrap();
        assert_eq!(near_idempotent_search(&s, 50, 1e-3, DEFAULT_WORD_CAP).unwrap(), None);
    }
}
