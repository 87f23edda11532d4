//! Eigenvalue lower bounds from approximate eigenpairs.
//!
//! If `|A| <= 1`, `|x| = 1`, `|λ| <= 2` and `|Ax - λx| <= (eps |λ|)^d`, then
//! `Λ(A) >= |λ| (1 - 4 eps)`.

use crate::matrix::{ComplexMatrix, C64};
use crate::prelude::*;
use crate::set::{operator_norm, spectral_radius, NormSpec};
use crate::{Error, Result, TOL_REL};

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualCertificate {
    pub a: ComplexMatrix,
    pub x: Vec<C64>,
    pub lambda: C64,
    pub norm: NormSpec,
    /// `|Ax - λx|` in `norm`.
    pub residual: f64,
    /// Solves `residual = (eps |λ|)^d`; infinite when `λ = 0`.
    pub eps: f64,
    /// `max(0, |λ| (1 - 4 eps))`, a lower bound on `Λ(A)`.
    pub bound: f64,
}

fn measure(a: &ComplexMatrix, x: &[C64], lambda: C64, n: &NormSpec) -> (f64, f64, f64) {
    let ax = a.mul_vec(x);
    let r: Vec<C64> = ax.iter().zip(x).map(|(&p, &q)| p - lambda * q).collect();
    let residual = n.vector_norm(&r);
    let m = lambda.norm();
    let d = a.dim() as f64;
    let eps = if m > 0.0 { residual.powf(1.0 / d) / m } else { f64::INFINITY };
    let bound = if eps.is_finite() { (m * (1.0 - 4.0 * eps)).max(0.0) } else { 0.0 };
    (residual, eps, bound)
}

/// Builds the certificate, rejecting inputs that violate the hypotheses.
pub fn residual_certificate(a: &ComplexMatrix, x: &[C64], lambda: C64, n: &NormSpec) -> Result<ResidualCertificate> {
    if x.len() != a.dim() {
        return Err(Error::InvalidArgument(format!("vector has length {}, expected {}", x.len(), a.dim())));
    }
    let a_norm = operator_norm(a, n)?;
    if a_norm > 1.0 + TOL_REL {
        return Err(Error::Precondition(format!("|A| <= 1 fails: |A| = {a_norm}")));
    }
    let x_norm = n.vector_norm(x);
    if (x_norm - 1.0).abs() > TOL_REL {
        return Err(Error::Precondition(format!("|x| = 1 fails: |x| = {x_norm}")));
    }
    if lambda.norm() > 2.0 {
        return Err(Error::Precondition(format!("|lambda| <= 2 fails: |lambda| = {}", lambda.norm())));
    }
    let (residual, eps, bound) = measure(a, x, lambda, n);
    Ok(ResidualCertificate { a: a.clone(), x: x.to_vec(), lambda, norm: n.clone(), residual, eps, bound })
}

impl ResidualCertificate {
    /// Recomputes residual, eps and bound from `a`, `x`, `lambda` and checks
    /// the stored values agree to `tol` relative.
    pub fn verify(&self, tol: f64) -> Result<()> {
        let (residual, eps, bound) = measure(&self.a, &self.x, self.lambda, &self.norm);
        let close = |p: f64, q: f64| p == q || (p - q).abs() <= tol * p.abs().max(q.abs()) + 1e-300;
        if !(close(residual, self.residual) && close(eps, self.eps) && close(bound, self.bound)) {
            return Err(Error::Precondition(format!(
                "stored certificate (residual {}, eps {}, bound {}) does not recompute (got {residual}, {eps}, {bound})",
                self.residual, self.eps, self.bound
            )));
        }
        Ok(())
    }

    /// Whether the lemma's conclusion `bound <= Λ(A)` holds on the computed
    /// spectrum, up to `tol` relative.
    pub fn holds(&self, tol: f64) -> Result<bool> {
        Ok(self.bound <= spectral_radius(&self.a)? * (1.0 + tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::vector;

    #[test]
    fn exact_eigenpair() {
        let a = ComplexMatrix::diagonal(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        let c = residual_certificate(&a, &vector::basis(2, 0), C64::new(1.0, 0.0), &NormSpec::Spectral).unwrap();
        assert_eq!((c.residual, c.eps, c.bound), (0.0, 0.0, 1.0));
        assert!(c.holds(1e-9).unwrap());
        c.verify(1e-12).unwrap();
    }

    #[test]
    fn vacuous_but_valid() {
        let a = ComplexMatrix::diagonal(&[C64::new(0.9, 0.0), C64::new(0.1, 0.0)]);
        let c = residual_certificate(&a, &vector::basis(2, 0), C64::new(1.0, 0.0), &NormSpec::Spectral).unwrap();
        assert!((c.residual - 0.1).abs() < 1e-15);
        assert!((c.eps - 0.1f64.sqrt()).abs() < 1e-15);
        assert_eq!(c.bound, 0.0);
    }

    #[test]
    fn preconditions_are_named() {
        let a = ComplexMatrix::identity(2).scale_real(2.0);
        let err = residual_certificate(&a, &vector::basis(2, 0), C64::new(1.0, 0.0), &NormSpec::Spectral).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("|A| <= 1")));
        let x = vec![C64::new(2.0, 0.0), C64::new(0.0, 0.0)];
        let err =
            residual_certificate(&ComplexMatrix::identity(2), &x, C64::new(1.0, 0.0), &NormSpec::Spectral).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("|x| = 1")));
        let err = residual_certificate(
            &ComplexMatrix::identity(2),
            &vector::basis(2, 0),
            C64::new(3.0, 0.0),
            &NormSpec::Spectral,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("lambda")));
    }
}
