//! Decimal strings of the form `<value>±<bound>`: the value is rounded half
//! to even at a fixed number of places and the bound covers both the
//! rounding and, for enclosures, the width of the interval.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use onesided::cf::RealValue;
use onesided::numeric::{QuadraticSurd, RationalInterval};

fn ten_pow(k: u32) -> BigInt {
    BigInt::from(10).pow(k)
}

/// `n / 10^digits` written out with exactly `digits` places.
fn fixed_point(n: &BigInt, digits: u32) -> String {
    let (whole, frac) = n.abs().div_rem(&ten_pow(digits));
    let sign = if n.is_negative() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac:0>width$}", width = digits as usize)
    }
}

/// Picks between `floor` and `floor + 1` given how the dropped part compares
/// with one half.
fn half_even(floor: BigInt, vs_half: Ordering) -> BigInt {
    match vs_half {
        Ordering::Less => floor,
        Ordering::Greater => floor + 1,
        Ordering::Equal if floor.is_even() => floor,
        Ordering::Equal => floor + 1,
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Rounded `x · 10^digits` and whether the rounding was exact.
pub fn round_rational(x: &BigRational, digits: u32) -> (BigInt, bool) {
    let scaled = x * BigRational::from_integer(ten_pow(digits));
    let floor = scaled.floor().to_integer();
    let dropped = &scaled - BigRational::from_integer(floor.clone());
    let exact = dropped.is_zero();
    (half_even(floor, dropped.cmp(&half())), exact)
}

/// Rounded `x · 10^digits` and whether the rounding was exact.
pub fn round_surd(x: &QuadraticSurd, digits: u32) -> (BigInt, bool) {
    if let Some(r) = x.to_rational() {
        return round_rational(&r, digits);
    }
    let scaled = x.mul_integer(&ten_pow(digits));
    let floor = scaled.floor();
    let dropped = scaled.add_integer(&-&floor);
    (half_even(floor, dropped.cmp_rational(&half())), false)
}

/// Smallest `d·10^e` (one significant digit) that is at least `b`.
pub fn bound_upper(b: &BigRational) -> String {
    if !b.is_positive() {
        return "0".to_string();
    }
    let mut e = b.numer().to_string().len() as i64 - b.denom().to_string().len() as i64;
    let scale = |e: i64| {
        if e >= 0 {
            BigRational::from_integer(ten_pow(e as u32))
        } else {
            BigRational::new(BigInt::one(), ten_pow((-e) as u32))
        }
    };
    while &scale(e) > b {
        e -= 1;
    }
    while &scale(e + 1) <= b {
        e += 1;
    }
    let mut digit = (b / scale(e)).ceil().to_integer();
    if digit == BigInt::from(10) {
        digit = BigInt::one();
        e += 1;
    }
    format!("{digit}e{e}")
}

fn rounding_bound(digits: u32) -> BigRational {
    BigRational::new(BigInt::from(5), ten_pow(digits + 1))
}

pub fn surd(x: &QuadraticSurd, digits: u32) -> String {
    let (n, exact) = round_surd(x, digits);
    let bound = if exact {
        BigRational::zero()
    } else {
        rounding_bound(digits)
    };
    format!("{}±{}", fixed_point(&n, digits), bound_upper(&bound))
}

#[cfg(test)]
pub fn rational(x: &BigRational, digits: u32) -> String {
    surd(&QuadraticSurd::from_rational(x), digits)
}

pub fn interval(i: &RationalInterval, digits: u32) -> String {
    let mid = i.midpoint();
    let (n, _) = round_rational(&mid, digits);
    let shown = BigRational::new(n.clone(), ten_pow(digits));
    let bound = i.width() / BigRational::from_integer(BigInt::from(2)) + (shown - mid).abs();
    format!("{}±{}", fixed_point(&n, digits), bound_upper(&bound))
}

pub fn real(x: &RealValue, digits: u32) -> String {
    match x {
        RealValue::Exact(s) => surd(s, digits),
        RealValue::Enclosure(i) => interval(i, digits),
    }
}
