use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor::squarefree_split;
use super::{isqrt, BigRational};
use crate::error::{Error, Result};

/// A real quadratic surd `(p + q·√d) / r`.
///
/// Values are always kept canonical: `d` is squarefree, `r > 0` and
/// `gcd(p, q, r) = 1`. Rationals are the special case `q = 0, d = 0`, so the
/// same type carries both the rational and the quadratic values that show up
/// as continued-fraction tails.
///
/// Arithmetic is closed inside one field `Q(√d)`. Combining two surds with
/// different non-trivial radicands fails with [`Error::MixedRadicand`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    d: BigInt,
    r: BigInt,
}

impl QuadraticSurd {
    /// Builds the canonical form of `(p + q·√d) / r`.
    ///
    /// ```
    /// use onesided::numeric::{BigInt, QuadraticSurd};
    /// let x = QuadraticSurd::new(2, 2, 8, 4).unwrap();
    /// // (2 + 2√8)/4 = (1 + 2√2)/2
    /// assert_eq!(x.to_string(), "(1 + 2*sqrt(2))/2");
    /// assert_eq!(x.d(), &BigInt::from(2));
    /// ```
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        d: impl Into<BigInt>,
        r: impl Into<BigInt>,
    ) -> Result<Self> {
        let (p, q, d, r) = (p.into(), q.into(), d.into(), r.into());
        if d.is_negative() {
            return Err(Error::NegativeDiscriminant);
        }
        if r.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let (square, core) = squarefree_split(&d);
        Ok(Self::normalized(p, q * square, core, r))
    }

    /// Like [`QuadraticSurd::new`] when `d = s² · core` with `core`
    /// squarefree is known in advance; fails if `d / core` is not a square.
    pub(crate) fn with_core(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        d: impl Into<BigInt>,
        r: impl Into<BigInt>,
        core: &BigInt,
    ) -> Result<Self> {
        let (p, q, d, r) = (p.into(), q.into(), d.into(), r.into());
        if r.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let (ratio, rem) = d.div_rem(core);
        let s = if core.is_positive() && rem.is_zero() && !ratio.is_negative() {
            isqrt(&ratio)
        } else {
            BigInt::from(-1)
        };
        if s.is_negative() || &s * &s != ratio {
            return Err(Error::InvalidArgument(format!(
                "{d} is not a square times {core}"
            )));
        }
        Ok(Self::normalized(p, q * s, core.clone(), r))
    }

    /// `√d`.
    pub fn sqrt(d: impl Into<BigInt>) -> Result<Self> {
        Self::new(0, 1, d, 1)
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::normalized(n.into(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    pub fn from_rational(x: &BigRational) -> Self {
        Self::normalized(
            x.numer().clone(),
            BigInt::zero(),
            BigInt::zero(),
            x.denom().clone(),
        )
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    // `d` must already be squarefree (or 0/1) and `r` nonzero.
    fn normalized(mut p: BigInt, mut q: BigInt, mut d: BigInt, mut r: BigInt) -> Self {
        if d.is_one() {
            p += &q;
            q = BigInt::zero();
        }
        if q.is_zero() || d.is_zero() {
            q = BigInt::zero();
            d = BigInt::zero();
        }
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() && !g.is_zero() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        if p.is_zero() && q.is_zero() {
            r = BigInt::one();
        }
        QuadraticSurd { p, q, d, r }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// Squarefree radicand; `0` for rational values.
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.p.clone(), self.r.clone()))
    }

    /// Radicand shared by `self` and `other`, if they live in one field.
    pub fn common_radicand(&self, other: &Self) -> Result<BigInt> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.d.clone()),
            (_, true) => Ok(self.d.clone()),
            _ if self.d == other.d => Ok(self.d.clone()),
            _ => Err(Error::MixedRadicand(
                self.d.to_string(),
                other.d.to_string(),
            )),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::normalized(
            &self.p * &other.r + &other.p * &self.r,
            &self.q * &other.r + &other.q * &self.r,
            d,
            &self.r * &other.r,
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::normalized(
            &self.p * &other.p + &self.q * &other.q * &d,
            &self.p * &other.q + &other.p * &self.q,
            d,
            &self.r * &other.r,
        ))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.recip()?)
    }

    /// `1/x`, rationalizing the denominator.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        // r / (p + q√d) = r (p - q√d) / (p² - q² d)
        let norm = &self.p * &self.p - &self.q * &self.q * &self.d;
        Ok(Self::normalized(
            &self.r * &self.p,
            -(&self.r * &self.q),
            self.d.clone(),
            norm,
        ))
    }

    pub fn add_rational(&self, x: &BigRational) -> Self {
        self.try_add(&Self::from_rational(x))
            .expect("rationals share every field")
    }

    pub fn mul_rational(&self, x: &BigRational) -> Self {
        self.try_mul(&Self::from_rational(x))
            .expect("rationals share every field")
    }

    pub fn add_integer(&self, n: &BigInt) -> Self {
        Self::normalized(
            &self.p + n * &self.r,
            self.q.clone(),
            self.d.clone(),
            self.r.clone(),
        )
    }

    pub fn mul_integer(&self, n: &BigInt) -> Self {
        Self::normalized(&self.p * n, &self.q * n, self.d.clone(), self.r.clone())
    }

    /// Galois conjugate `(p - q√d)/r`.
    pub fn conjugate(&self) -> Self {
        Self::normalized(
            self.p.clone(),
            -self.q.clone(),
            self.d.clone(),
            self.r.clone(),
        )
    }

    /// Sign of the value, computed from the integer coefficients.
    pub fn signum(&self) -> Ordering {
        sign_of_sum(&self.p, &self.q, &self.d)
    }

    /// Exact ordering of the two real values.
    ///
    /// ```
    /// use std::cmp::Ordering;
    /// use onesided::numeric::{BigRational, QuadraticSurd};
    /// let root5 = QuadraticSurd::sqrt(5).unwrap();
    /// let nine_quarters = QuadraticSurd::from_rational(&BigRational::new(9.into(), 4.into()));
    /// assert_eq!(root5.cmp_exact(&nine_quarters).unwrap(), Ordering::Less);
    /// ```
    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering> {
        if self.is_rational() && other.is_rational() {
            // cheap path, no subtraction needed
            return Ok((&self.p * &other.r).cmp(&(&other.p * &self.r)));
        }
        Ok(self.try_sub(other)?.signum())
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, x: &BigRational) -> Ordering {
        // (p + q√d)/r vs a/b  <=>  sign(b p - a r + b q √d)
        let lhs = x.denom() * &self.p - x.numer() * &self.r;
        sign_of_sum(&lhs, &(x.denom() * &self.q), &self.d)
    }

    /// Largest integer not exceeding the value.
    ///
    /// Uses one integer square root: for irrational `q√d`, `⌊q√d⌋` is
    /// `isqrt(q²d)` (or `-isqrt(q²d) - 1` when `q < 0`) and the value lies
    /// strictly between consecutive multiples of `1/r`, so the floor of the
    /// sum reduces to an integer floor division.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.p.div_floor(&self.r);
        }
        let root = isqrt(&(&self.q * &self.q * &self.d));
        let k = if self.q.is_positive() {
            root
        } else {
            -root - 1
        };
        (&self.p + k).div_floor(&self.r)
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Fractional part `x - ⌊x⌋`, in `[0, 1)`.
    pub fn fract(&self) -> Self {
        self.add_integer(&-self.floor())
    }

    /// Lossy conversion for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        let r = self.r.to_f64().unwrap_or(f64::NAN);
        (p + q * d.sqrt()) / r
    }

    /// `⌊x · 10^digits⌋` style scaling helper: `⌊x · n⌋` for a positive integer `n`.
    pub fn floor_scaled(&self, n: &BigInt) -> BigInt {
        self.mul_integer(n).floor()
    }
}

impl Neg for QuadraticSurd {
    type Output = QuadraticSurd;
    fn neg(self) -> Self::Output {
        -&self
    }
}

impl Neg for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn neg(self) -> Self::Output {
        QuadraticSurd {
            p: -&self.p,
            q: -&self.q,
            d: self.d.clone(),
            r: self.r.clone(),
        }
    }
}

impl From<BigRational> for QuadraticSurd {
    fn from(x: BigRational) -> Self {
        Self::from_rational(&x)
    }
}

impl From<BigInt> for QuadraticSurd {
    fn from(x: BigInt) -> Self {
        Self::from_integer(x)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return if self.r.is_one() {
                write!(f, "{}", self.p)
            } else {
                write!(f, "{}/{}", self.p, self.r)
            };
        }
        let radical = if self.q.is_one() {
            format!("sqrt({})", self.d)
        } else if (-&self.q).is_one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", self.q, self.d)
        };
        let body = if self.p.is_zero() {
            radical
        } else if self.q.is_negative() {
            format!("{} - {}", self.p, radical.trim_start_matches('-'))
        } else {
            format!("{} + {}", self.p, radical)
        };
        if self.r.is_one() {
            if self.p.is_zero() {
                write!(f, "{body}")
            } else {
                write!(f, "({body})")
            }
        } else {
            write!(f, "({body})/{}", self.r)
        }
    }
}

/// Sign of `a + b·√d` for squarefree `d`.
fn sign_of_sum(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    let sa = a.sign();
    let sb = if d.is_zero() { Sign::NoSign } else { b.sign() };
    let ord = |s: Sign| match s {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    };
    match (sa, sb) {
        (_, Sign::NoSign) => ord(sa),
        (Sign::NoSign, _) => ord(sb),
        _ if sa == sb => ord(sa),
        _ => {
            // opposite signs: the term with the larger square wins
            let a2 = a * a;
            let b2d = b * b * d;
            match a2.cmp(&b2d) {
                Ordering::Greater => ord(sa),
                Ordering::Less => ord(sb),
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}
