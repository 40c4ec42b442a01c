//! Outward-rounded fixed-point interval arithmetic.
//!
//! A [`FixedInterval`] at precision `bits` stores integers `lo, hi` and
//! stands for the real interval `[lo, hi] · 2^-bits`. Every operation rounds
//! the lower end down and the upper end up, so results are certified
//! enclosures. This is what evaluates `π` and `tan` for the gap conditions.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{BigRational, QuadraticSurd, RationalInterval};
use crate::error::{Error, Result};

const GUARD_BITS: u32 = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedInterval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn scale(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl FixedInterval {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn from_integer(n: &BigInt, bits: u32) -> Self {
        let v = n << bits as usize;
        FixedInterval {
            lo: v.clone(),
            hi: v,
            bits,
        }
    }

    pub fn from_rational(x: &BigRational, bits: u32) -> Self {
        let num = x.numer() << bits as usize;
        FixedInterval {
            lo: floor_div(&num, x.denom()),
            hi: ceil_div(&num, x.denom()),
            bits,
        }
    }

    /// Encloses an exact surd using its exact floor.
    pub fn from_surd(x: &QuadraticSurd, bits: u32) -> Self {
        if let Some(r) = x.to_rational() {
            return Self::from_rational(&r, bits);
        }
        let lo = x.floor_scaled(&scale(bits));
        let hi = &lo + 1;
        FixedInterval { lo, hi, bits }
    }

    pub fn from_interval(x: &RationalInterval, bits: u32) -> Self {
        let lo = Self::from_rational(x.lo(), bits).lo;
        let hi = Self::from_rational(x.hi(), bits).hi;
        FixedInterval { lo, hi, bits }
    }

    pub fn to_rational_interval(&self) -> RationalInterval {
        let s = scale(self.bits);
        RationalInterval::new(
            BigRational::new(self.lo.clone(), s.clone()),
            BigRational::new(self.hi.clone(), s),
        )
        .expect("fixed intervals keep lo <= hi")
    }

    /// Re-expresses the enclosure at a lower precision, rounding outward.
    pub fn round_to(&self, bits: u32) -> Self {
        if bits >= self.bits {
            let shift = (bits - self.bits) as usize;
            return FixedInterval {
                lo: &self.lo << shift,
                hi: &self.hi << shift,
                bits,
            };
        }
        let s = scale(self.bits - bits);
        FixedInterval {
            lo: floor_div(&self.lo, &s),
            hi: ceil_div(&self.hi, &s),
            bits,
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.bits, other.bits, "precision mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        FixedInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            bits: self.bits,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        FixedInterval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
            bits: self.bits,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let s = scale(self.bits);
        let lo = products.iter().min().unwrap();
        let hi = products.iter().max().unwrap();
        FixedInterval {
            lo: floor_div(lo, &s),
            hi: ceil_div(hi, &s),
            bits: self.bits,
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check(other);
        if !other.lo.is_positive() && !other.hi.is_negative() {
            return Err(Error::ZeroDenominator);
        }
        let shift = self.bits as usize;
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for a in [&self.lo, &self.hi] {
            let num = a << shift;
            for b in [&other.lo, &other.hi] {
                let f = floor_div(&num, b);
                let c = ceil_div(&num, b);
                lo = Some(lo.map_or(f.clone(), |v| v.min(f)));
                hi = Some(hi.map_or(c.clone(), |v| v.max(c)));
            }
        }
        Ok(FixedInterval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
            bits: self.bits,
        })
    }

    pub fn mul_integer(&self, n: &BigInt) -> Self {
        let (a, b) = (&self.lo * n, &self.hi * n);
        let (lo, hi) = if n.is_negative() { (b, a) } else { (a, b) };
        FixedInterval {
            lo,
            hi,
            bits: self.bits,
        }
    }

    /// Division by a positive integer.
    pub fn div_integer(&self, n: &BigInt) -> Self {
        assert!(n.is_positive());
        FixedInterval {
            lo: floor_div(&self.lo, n),
            hi: ceil_div(&self.hi, n),
            bits: self.bits,
        }
    }

    /// Widens by `ulps` units in the last place on each side.
    fn widen(&self, ulps: &BigInt) -> Self {
        FixedInterval {
            lo: &self.lo - ulps,
            hi: &self.hi + ulps,
            bits: self.bits,
        }
    }

    pub fn try_cmp(&self, other: &Self) -> Option<Ordering> {
        self.check(other);
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Certified ordering against an exact surd.
    pub fn try_cmp_surd(&self, x: &QuadraticSurd) -> Option<Ordering> {
        self.to_rational_interval().try_cmp_surd(x)
    }
}

impl RationalInterval {
    /// Ordering of every point of the interval against `x`, when uniform.
    pub fn try_cmp_surd(&self, x: &QuadraticSurd) -> Option<Ordering> {
        let lo = x.cmp_rational(self.lo());
        let hi = x.cmp_rational(self.hi());
        match (lo, hi) {
            // x < lo  => interval above x
            (Ordering::Less, _) => Some(Ordering::Greater),
            (_, Ordering::Greater) => Some(Ordering::Less),
            (Ordering::Equal, Ordering::Equal) => Some(Ordering::Equal),
            _ => None,
        }
    }
}

/// Encloses `atan(1/k)` by its alternating Taylor series.
fn atan_recip(k: u64, bits: u32) -> FixedInterval {
    let one = scale(bits);
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let mut power = k.clone(); // k^(2j+1)
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    let mut j: u64 = 0;
    loop {
        let denom = &power * BigInt::from(2 * j + 1);
        let t_lo = floor_div(&one, &denom);
        let t_hi = ceil_div(&one, &denom);
        if t_hi <= BigInt::one() {
            // remainder of an alternating decreasing series is below the
            // first omitted term
            lo -= &t_hi;
            hi += &t_hi;
            break;
        }
        if j % 2 == 0 {
            lo += &t_lo;
            hi += &t_hi;
        } else {
            lo -= &t_hi;
            hi -= &t_lo;
        }
        power *= &k2;
        j += 1;
    }
    FixedInterval { lo, hi, bits }
}

fn pi_uncached(bits: u32) -> FixedInterval {
    let w = bits + GUARD_BITS;
    // Machin: π = 16 atan(1/5) - 4 atan(1/239)
    let a = atan_recip(5, w).mul_integer(&BigInt::from(16));
    let b = atan_recip(239, w).mul_integer(&BigInt::from(4));
    a.sub(&b).round_to(bits)
}

/// Certified enclosure of `π` at the given precision (cached).
pub fn pi_enclosure(bits: u32) -> FixedInterval {
    static CACHE: OnceLock<Mutex<HashMap<u32, FixedInterval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&bits) {
        return hit.clone();
    }
    let value = pi_uncached(bits);
    cache.lock().unwrap().insert(bits, value.clone());
    value
}

/// `sin` and `cos` at an exact dyadic point `0 <= x <= 2`.
fn sin_cos_point(x: &BigInt, bits: u32) -> (FixedInterval, FixedInterval) {
    let xi = FixedInterval {
        lo: x.clone(),
        hi: x.clone(),
        bits,
    };
    let x2 = xi.mul(&xi);
    let series = |first: FixedInterval, offset: u64| {
        // terms t_{k+1} = t_k x² / ((2k+1+offset)(2k+2+offset))
        let mut sum = first.clone();
        let mut term = first;
        let mut k: u64 = 0;
        loop {
            let denom = BigInt::from((2 * k + 1 + offset) * (2 * k + 2 + offset));
            term = term.mul(&x2).div_integer(&denom);
            k += 1;
            if term.hi <= BigInt::one() && k > 2 {
                sum = sum.widen(&term.hi);
                break;
            }
            sum = if k % 2 == 1 {
                sum.sub(&term)
            } else {
                sum.add(&term)
            };
        }
        sum
    };
    let sin = series(xi.clone(), 1);
    let cos = series(FixedInterval::from_integer(&BigInt::one(), bits), 0);
    (sin, cos)
}

fn tan_point(x: &BigInt, bits: u32) -> Result<FixedInterval> {
    let (sin, cos) = sin_cos_point(x, bits);
    if !cos.lo.is_positive() {
        return Err(Error::BoundaryUndecided(bits));
    }
    sin.div(&cos)
}

/// Certified enclosure of `tan(x)` for `x ⊂ [0, π/2)`.
///
/// `tan` is increasing on that range, so the endpoints are evaluated
/// separately at exact dyadic points. Fails with
/// [`Error::BoundaryUndecided`] when the enclosure of `cos` at the upper
/// endpoint is not bounded away from zero at this precision.
pub fn tan_enclosure(x: &FixedInterval) -> Result<FixedInterval> {
    if x.lo.is_negative() {
        return Err(Error::InvalidArgument(
            "tan enclosure needs a non-negative argument".into(),
        ));
    }
    if x.hi > scale(x.bits) * 2 {
        return Err(Error::InvalidArgument(
            "tan enclosure argument exceeds 2".into(),
        ));
    }
    let w = x.bits + GUARD_BITS;
    let shift = GUARD_BITS as usize;
    let lo = tan_point(&(&x.lo << shift), w)?;
    let hi = tan_point(&(&x.hi << shift), w)?;
    Ok(FixedInterval {
        lo: lo.lo,
        hi: hi.hi,
        bits: w,
    }
    .round_to(x.bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational;

    #[test]
    fn pi_matches_known_digits() {
        // 3.14159265358979323846264338327950288...
        let lo = rational(314159265358979323846264338327950u128, 10u128.pow(32));
        let hi = rational(314159265358979323846264338327951u128, 10u128.pow(32));
        for bits in [64, 128, 256, 1024] {
            let pi = pi_enclosure(bits).to_rational_interval();
            assert!(pi.lo() < &hi && pi.hi() > &lo, "bits={bits}: {pi}");
            assert!(pi.width() <= rational(4, 1) / BigRational::from_integer(scale(bits)));
        }
    }

    #[test]
    fn tan_of_pi_over_four_is_one() {
        let bits = 128;
        let quarter_pi = pi_enclosure(bits).div_integer(&BigInt::from(4));
        let t = tan_enclosure(&quarter_pi).unwrap();
        let one = FixedInterval::from_integer(&BigInt::one(), bits);
        assert!(t.lo <= one.lo && one.hi <= t.hi);
        assert!(&t.hi - &t.lo < BigInt::from(64));
    }

    #[test]
    fn tan_small_argument() {
        // tan(1/10) = 0.10033467208545054505...
        let x = FixedInterval::from_rational(&rational(1, 10), 96);
        let t = tan_enclosure(&x).unwrap().to_rational_interval();
        let lo = rational(1003346720854505450u64, 10u64.pow(19));
        let hi = rational(1003346720854505451u64, 10u64.pow(19));
        assert!(t.lo() >= &lo && t.hi() <= &hi, "{t}");
    }

    #[test]
    fn tan_near_pole_is_undecided_or_huge() {
        let bits = 64;
        let half_pi = pi_enclosure(bits).div_integer(&BigInt::from(2));
        assert!(tan_enclosure(&half_pi).is_err());
    }

    #[test]
    fn surd_enclosure_contains_value() {
        let root5 = QuadraticSurd::sqrt(5).unwrap();
        let enc = FixedInterval::from_surd(&root5, 80).to_rational_interval();
        assert!(enc.contains_surd(&root5));
        assert_eq!(enc.try_cmp_surd(&root5), None);
    }
}
