//! Exact joint spectral radius over the rationals with a p-adic absolute
//! value.
//!
//! Over a non-archimedean field the joint spectral radius is attained by a
//! word of length at most `ell_bound(d)`, so it can be computed exactly by
//! enumeration: each product's spectral radius is read off the Newton
//! polygon of its characteristic polynomial. Magnitudes stay in exponent
//! form `p^(-e)` with rational `e`; nothing here uses floating point.

mod magnitude;
mod newton;
mod padic;
mod rational;

pub use magnitude::{int_valuation, is_prime, padic_valuation, PAdicMagnitude};
pub use newton::{char_poly_exact, max_root_magnitude, NewtonPolygon};
pub use padic::{
    check_ultra_boca, matrix_norm, padic_jsr_exact, padic_jsr_exact_with, padic_nilpotency_exact,
    padic_nilpotency_report, ultrametric_set_norm, PAdicJsr, PAdicMatrixSet, PAdicNilpotency, UltraBocaReport,
};
pub use rational::{format_rational, parse_rational, IntMatrix, RationalMatrix};

use num_bigint::BigUint;

/// Longest word length needed to attain the joint spectral radius:
/// `min(d^2, ceil(2 d log2 d) + 4d - 4)` for `d >= 2`, and 1 for `d = 1`.
pub fn ell_bound(d: usize) -> usize {
    if d <= 1 {
        return 1;
    }
    // ceil(2d log2 d) is the least m with 2^m >= d^(2d).
    let power = BigUint::from(d).pow(2 * d as u32);
    let bits = power.bits() as usize;
    let exact_power_of_two = power.trailing_zeros() == Some(bits as u64 - 1);
    let ceil_log = if exact_power_of_two { bits - 1 } else { bits };
    (d * d).min(ceil_log + 4 * d - 4)
}
