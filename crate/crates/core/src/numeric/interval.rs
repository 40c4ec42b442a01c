use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use super::{BigRational, QuadraticSurd};
use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` with exact rational endpoints.
///
/// Used wherever a real value is only known through an enclosure: tails of
/// term streams, and anything involving `π`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!(
                "interval endpoints out of order: [{lo}, {hi}]"
            )));
        }
        Ok(RationalInterval { lo, hi })
    }

    /// Interval spanned by two points in either order.
    pub fn hull(a: BigRational, b: BigRational) -> Self {
        if a <= b {
            RationalInterval { lo: a, hi: b }
        } else {
            RationalInterval { lo: b, hi: a }
        }
    }

    pub fn point(x: BigRational) -> Self {
        RationalInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Whether the exact value `x` lies in the interval.
    pub fn contains_surd(&self, x: &QuadraticSurd) -> bool {
        x.cmp_rational(&self.lo) != Ordering::Less && x.cmp_rational(&self.hi) != Ordering::Greater
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn add_rational(&self, x: &BigRational) -> Self {
        RationalInterval {
            lo: &self.lo + x,
            hi: &self.hi + x,
        }
    }

    pub fn neg(&self) -> Self {
        RationalInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().cloned().unwrap();
        let hi = products.iter().max().cloned().unwrap();
        RationalInterval { lo, hi }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains(&BigRational::zero()) {
            return Err(Error::ZeroDenominator);
        }
        Ok(RationalInterval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    /// Ordering when the intervals are disjoint (touching endpoints of two
    /// point intervals count as equal); `None` when they overlap.
    pub fn try_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.is_point() && other.is_point() {
            return Some(self.lo.cmp(&other.lo));
        }
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    /// Sign when it is determined by the enclosure.
    pub fn try_signum(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.is_point() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
