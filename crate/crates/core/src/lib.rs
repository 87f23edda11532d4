//! Two-sided bounds on the joint spectral radius of finite matrix sets.
//!
//! The crate is `no_std` (it needs `alloc`) and has no IO. It covers:
//!
//! - [`matrix`], [`eigen`] and [`set`]: dense complex matrices, eigenvalues,
//!   operator norms, and enumeration of product words.
//! - [`bounds`]: lower bounds from spectral radii of products, upper bounds
//!   from norms of product sets, conjugation search, Rota–Strang and
//!   Barabanov norm approximations, and a nilpotency decision.
//! - [`certificates`]: residual eigenvalue certificates, small integer
//!   combinations, trace bounds, trajectory-return search and three
//!   inequality checkers with three-valued verdicts.
//! - [`ultrametric`]: exact computation over the rationals with a p-adic
//!   absolute value, through Newton polygons of characteristic polynomials.
//! - [`families`]: the built-in example matrix sets.
//!
//! Products follow one convention everywhere: the word `(i1, ..., ik)`
//! evaluates to `M[ik] * ... * M[i1]`, so `i1` acts first on a vector.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod bounds;
pub mod certificates;
pub mod eigen;
mod error;
pub mod families;
pub mod matrix;
pub mod random;
pub mod set;
pub mod ultrametric;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, C64};
pub use set::{MatrixSet, NormSpec, Word};

/// Default relative tolerance for floating comparisons.
pub const TOL_REL: f64 = 1e-9;

/// Default cap on the number of words a single enumeration may visit.
pub const DEFAULT_WORD_CAP: u64 = 2_000_000;

/// Default cap on the matrix dimension.
pub const DEFAULT_DIM_CAP: usize = 32;

/// Default cap on the condition number of an ellipsoidal norm's matrix.
pub const DEFAULT_COND_CAP: f64 = 1e12;

pub(crate) mod prelude {
    pub use alloc::collections::BTreeMap;
    pub use alloc::format;
    pub use alloc::string::{String, ToString};
    pub use alloc::vec;
    pub use alloc::vec::Vec;
    #[allow(unused_imports)]
    pub use num_traits::Float;
}
