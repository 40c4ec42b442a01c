use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::convergents::convergents;
use super::expansion::CfExpansion;
use crate::error::{Error, Result};
use crate::numeric::{BigRational, QuadraticSurd, RationalInterval};

/// A real number known either exactly or through a rational enclosure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealValue {
    Exact(QuadraticSurd),
    Enclosure(RationalInterval),
}

impl RealValue {
    pub fn exact(&self) -> Option<&QuadraticSurd> {
        match self {
            RealValue::Exact(x) => Some(x),
            RealValue::Enclosure(_) => None,
        }
    }

    pub fn add_rational(&self, x: &BigRational) -> Self {
        match self {
            RealValue::Exact(v) => RealValue::Exact(v.add_rational(x)),
            RealValue::Enclosure(i) => RealValue::Enclosure(i.add_rational(x)),
        }
    }

    pub fn mul_rational(&self, x: &BigRational) -> Self {
        match self {
            RealValue::Exact(v) => RealValue::Exact(v.mul_rational(x)),
            RealValue::Enclosure(i) => {
                RealValue::Enclosure(i.mul(&RationalInterval::point(x.clone())))
            }
        }
    }

    pub fn recip(&self) -> Result<Self> {
        Ok(match self {
            RealValue::Exact(v) => RealValue::Exact(v.recip()?),
            RealValue::Enclosure(i) => RealValue::Enclosure(i.recip()?),
        })
    }

    /// Ordering when it is certain. Two exact values from different
    /// quadratic fields are an error.
    pub fn try_cmp(&self, other: &Self) -> Result<Option<Ordering>> {
        Ok(match (self, other) {
            (RealValue::Exact(a), RealValue::Exact(b)) => Some(a.cmp_exact(b)?),
            (RealValue::Enclosure(a), RealValue::Exact(b)) => a.try_cmp_surd(b),
            (RealValue::Exact(a), RealValue::Enclosure(b)) => {
                b.try_cmp_surd(a).map(Ordering::reverse)
            }
            (RealValue::Enclosure(a), RealValue::Enclosure(b)) => a.try_cmp(b),
        })
    }

    pub fn try_cmp_rational(&self, x: &BigRational) -> Option<Ordering> {
        match self {
            RealValue::Exact(v) => Some(v.cmp_rational(x)),
            RealValue::Enclosure(i) => i.try_cmp(&RationalInterval::point(x.clone())),
        }
    }

    /// Floating-point approximation for display.
    pub fn to_f64(&self) -> f64 {
        match self {
            RealValue::Exact(v) => v.to_f64(),
            RealValue::Enclosure(i) => {
                use num_traits::ToPrimitive;
                i.midpoint().to_f64().unwrap_or(f64::NAN)
            }
        }
    }
}

impl fmt::Display for RealValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealValue::Exact(v) => write!(f, "{v}"),
            RealValue::Enclosure(i) => write!(f, "{i}"),
        }
    }
}

/// `[0; a_n, a_{n-1}, ..., a_1] = q_{n-1}/q_n`.
///
/// ```
/// use onesided::cf::{back_value, cf_expand, AlphaSource};
/// use onesided::numeric::BigRational;
///
/// let phi = cf_expand(AlphaSource::cf([1], [1])).unwrap();
/// assert_eq!(back_value(&phi, 4).unwrap(), BigRational::new(3.into(), 5.into()));
/// ```
pub fn back_value(cf: &CfExpansion, n: usize) -> Result<BigRational> {
    if let Some(last) = cf.last_index() {
        if n > last {
            return Err(Error::NoTail(last));
        }
    }
    let table = convergents(cf, n);
    let (prev, cur) = match (table.get(n as i64 - 1), table.get(n as i64)) {
        (Some(prev), Some(cur)) => (prev, cur),
        _ => return Err(Error::InsufficientTerms(n)),
    };
    Ok(BigRational::new(prev.q.clone(), cur.q.clone()))
}

/// `[a_{n+1}; a_{n+2}, ...]`: exact for finite and periodic expansions, an
/// enclosure for streams.
pub fn tail_value(cf: &CfExpansion, n: usize) -> Result<RealValue> {
    if cf.is_stream() {
        cf.quotient_enclosure(n + 1, cf.budget())
            .map(RealValue::Enclosure)
    } else {
        cf.complete_quotient(n + 1).map(RealValue::Exact)
    }
}

/// `P(n) = [a_{n+1}; a_{n+2}, ...] + [0; a_n, ..., a_1]`.
///
/// ```
/// use onesided::cf::{cf_expand, p_quantity, AlphaSource};
/// use onesided::numeric::QuadraticSurd;
///
/// let root5 = cf_expand(AlphaSource::Surd(QuadraticSurd::sqrt(5).unwrap())).unwrap();
/// let p0 = p_quantity(&root5, 0).unwrap();
/// assert_eq!(p0.exact().unwrap().to_string(), "(2 + sqrt(5))");
/// ```
pub fn p_quantity(cf: &CfExpansion, n: usize) -> Result<RealValue> {
    let tail = tail_value(cf, n)?;
    Ok(tail.add_rational(&back_value(cf, n)?))
}

/// `α - p_n/q_n`.
///
/// For `n >= 1` this is `(-1)^n / (q_n² P(n))`; for `n = 0` it is `α - a0`
/// taken directly. At the last index of a finite expansion it is exactly 0.
pub fn approx_error(cf: &CfExpansion, n: usize) -> Result<RealValue> {
    if cf.last_index() == Some(n) {
        return Ok(RealValue::Exact(QuadraticSurd::zero()));
    }
    if n == 0 {
        let a0 = BigRational::from_integer(cf.term_required(0)?);
        return match cf.exact_value() {
            Some(alpha) => Ok(RealValue::Exact(alpha.add_rational(&-a0))),
            None => cf
                .value_enclosure(cf.budget())
                .map(|i| RealValue::Enclosure(i.add_rational(&-a0))),
        };
    }
    let p = p_quantity(cf, n)?;
    let q = convergents(cf, n)
        .get(n as i64)
        .map(|r| r.q.clone())
        .ok_or(Error::InsufficientTerms(n))?;
    let mut scale = BigRational::from_integer(&q * &q);
    if n % 2 == 1 {
        scale = -scale;
    }
    p.mul_rational(&scale).recip()
}

/// `|α - p/q|` as an exact value or enclosure.
pub(crate) fn abs_distance(cf: &CfExpansion, p: &BigInt, q: &BigInt) -> Result<RealValue> {
    let x = BigRational::new(p.clone(), q.clone());
    match cf.exact_value() {
        Some(alpha) => {
            let d = alpha.add_rational(&-x);
            Ok(RealValue::Exact(if d.signum() == Ordering::Less {
                -d
            } else {
                d
            }))
        }
        None => {
            let d = cf.value_enclosure(cf.budget())?.add_rational(&-x);
            Ok(RealValue::Enclosure(
                if d.hi().is_negative() || d.hi().is_zero() {
                    d.neg()
                } else {
                    d
                },
            ))
        }
    }
}
