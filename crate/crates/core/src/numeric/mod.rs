//! Exact arithmetic: rationals, real quadratic surds, and rational-endpoint
//! intervals.
//!
//! Everything that decides a predicate in this crate (a floor, a strict
//! inequality, a sign) goes through this module and never through floating
//! point. [`BigRational`] is re-exported from `num-rational`; the surd and
//! interval types are local.

mod factor;
mod fixed;
mod interval;
mod surd;

pub use fixed::{pi_enclosure, tan_enclosure, FixedInterval};
pub use interval::RationalInterval;
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use surd::QuadraticSurd;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Floor of a rational.
pub fn floor_rational(x: &BigRational) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// Ceiling of a rational.
pub fn ceil_rational(x: &BigRational) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

/// `(-1)^n` as a `BigInt`.
pub fn alternating_sign(n: usize) -> BigInt {
    if n % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Integer power with a `u32` exponent.
pub fn pow(base: &BigInt, exp: u32) -> BigInt {
    num_traits::pow(base.clone(), exp as usize)
}

#[cfg(test)]
pub(crate) fn rational(p: impl Into<BigInt>, q: impl Into<BigInt>) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Integer square root of a non-negative integer (floor).
pub(crate) fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    if n.is_zero() {
        return BigInt::zero();
    }
    num_integer::Roots::sqrt(n)
}
