//! Dense square complex matrices, row-major.

use core::ops::{Index, IndexMut};

use num_complex::Complex;

use crate::prelude::*;
use crate::{Error, Result};

pub type C64 = Complex<f64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// A square complex matrix with finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// non-finite values.
    pub fn new(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if data.len() != dim * dim {
            return Err(Error::Shape { dim, expected: dim * dim, got: data.len() });
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { row: k / dim, col: k % dim });
        }
        Ok(Self { dim, data })
    }

    /// Skips validation; callers guarantee `data.len() == dim * dim`.
    pub(crate) fn from_raw(dim: usize, data: Vec<C64>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_raw(dim, vec![ZERO; dim * dim])
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    /// The elementary matrix with a single 1 at `(row, col)`, zero-based.
    pub fn elementary(dim: usize, row: usize, col: usize) -> Self {
        let mut m = Self::zeros(dim);
        m[(row, col)] = ONE;
        m
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::Shape { dim, expected: dim * dim, got: dim * row.len() });
            }
            data.extend(row.iter().map(|&x| C64::new(x, 0.0)));
        }
        Self::new(dim, data)
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::Shape { dim, expected: dim * dim, got: dim * row.len() });
            }
            data.extend(row);
        }
        Self::new(dim, data)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.dim;
        debug_assert_eq!(n, rhs.dim);
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            let a_row = &self.data[i * n..(i + 1) * n];
            let out_row = &mut out[i * n..(i + 1) * n];
            for (k, &a) in a_row.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let b_row = &rhs.data[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Self::from_raw(n, out)
    }

    pub fn mul_vec(&self, x: &[C64]) -> Vec<C64> {
        let n = self.dim;
        (0..n).map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum()).collect()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                out[j * n + i] = self.data[i * n + j].conj();
            }
        }
        Self::from_raw(n, out)
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::from_raw(self.dim, self.data.iter().map(|&z| z * c).collect())
    }

    pub fn scale_real(&self, c: f64) -> Self {
        Self::from_raw(self.dim, self.data.iter().map(|&z| z * c).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_raw(self.dim, self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::from_raw(self.dim, self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.dim);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Inverse by Gauss–Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        let scale = self.max_abs();
        if scale == 0.0 {
            return Err(Error::Singular);
        }
        for col in 0..n {
            let (pivot, pivot_abs) =
                (col..n)
                    .map(|r| (r, a[r * n + col].norm()))
                    .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot_abs <= f64::EPSILON * scale * n as f64 {
                return Err(Error::Singular);
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let p = ONE / a[col * n + col];
            for j in 0..n {
                a[col * n + j] *= p;
                inv[col * n + j] *= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f == ZERO {
                    continue;
                }
                for j in 0..n {
                    let (ac, ic) = (a[col * n + j], inv[col * n + j]);
                    a[r * n + j] -= f * ac;
                    inv[r * n + j] -= f * ic;
                }
            }
        }
        Self::new(n, inv).map_err(|_| Error::Singular)
    }

    /// Upper-triangular `R` with `self = R^H R`, for Hermitian positive
    /// definite input.
    pub fn cholesky_upper(&self) -> Result<Self> {
        let n = self.dim;
        let mut r = Self::zeros(n);
        for j in 0..n {
            let mut diag = self[(j, j)].re;
            for k in 0..j {
                diag -= r[(k, j)].norm_sqr();
            }
            if !(diag > 0.0) {
                return Err(Error::NotPositiveDefinite);
            }
            let rjj = diag.sqrt();
            r[(j, j)] = C64::new(rjj, 0.0);
            for i in (j + 1)..n {
                let mut s = self[(j, i)];
                for k in 0..j {
                    s -= r[(k, j)].conj() * r[(k, i)];
                }
                r[(j, i)] = s / rjj;
            }
        }
        Ok(r)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Small helpers on complex vectors.
pub mod vector {
    use super::{C64, ZERO};
    use crate::prelude::*;

    pub fn norm2(x: &[C64]) -> f64 {
        x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn norm1(x: &[C64]) -> f64 {
        x.iter().map(|z| z.norm()).sum()
    }

    pub fn norm_inf(x: &[C64]) -> f64 {
        x.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `<x, y>`, conjugate-linear in `x`.
    pub fn inner(x: &[C64], y: &[C64]) -> C64 {
        x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn sub(x: &[C64], y: &[C64]) -> Vec<C64> {
        x.iter().zip(y).map(|(a, b)| a - b).collect()
    }

    pub fn scale(x: &[C64], c: C64) -> Vec<C64> {
        x.iter().map(|&a| a * c).collect()
    }

    pub fn basis(dim: usize, i: usize) -> Vec<C64> {
        let mut e = vec![ZERO; dim];
        e[i] = C64::new(1.0, 0.0);
        e
    }

    /// Rotates the phase so the first largest-modulus coordinate is real and
    /// positive. Two vectors equal up to a unit scalar map to the same point.
    pub fn fix_phase(x: &mut [C64]) {
        let mut best = 0;
        let mut best_abs = -1.0;
        for (i, z) in x.iter().enumerate() {
            let a = z.norm();
            if a > best_abs * (1.0 + 1e-12) {
                best = i;
                best_abs = a;
            }
        }
        if best_abs > 0.0 {
            let phase = x[best].conj() / best_abs;
            for z in x.iter_mut() {
                *z *= phase;
            }
        }
    }
}
