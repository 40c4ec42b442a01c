use std::fmt;

use num_bigint::BigInt;

use crate::numeric::{BigRational, QuadraticSurd};

/// Where the real number `α` comes from.
pub enum AlphaSource {
    Rational(BigRational),
    Surd(QuadraticSurd),
    /// `[prefix; period, period, ...]`; `prefix[0]` is `a0`. An empty period
    /// means a finite continued fraction.
    ExplicitCf {
        prefix: Vec<BigInt>,
        period: Vec<BigInt>,
    },
    TermStream(TermStream),
}

impl AlphaSource {
    pub fn rational(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        AlphaSource::Rational(BigRational::new(p.into(), q.into()))
    }

    pub fn surd(x: QuadraticSurd) -> Self {
        AlphaSource::Surd(x)
    }

    pub fn cf<I, J>(prefix: I, period: J) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
        J: IntoIterator,
        J::Item: Into<BigInt>,
    {
        AlphaSource::ExplicitCf {
            prefix: prefix.into_iter().map(Into::into).collect(),
            period: period.into_iter().map(Into::into).collect(),
        }
    }

    /// `-α`, when it can be formed without consuming a stream.
    pub fn negated(&self) -> Option<AlphaSource> {
        match self {
            AlphaSource::Rational(r) => Some(AlphaSource::Rational(-r)),
            AlphaSource::Surd(s) => Some(AlphaSource::Surd(-s)),
            AlphaSource::ExplicitCf { .. } | AlphaSource::TermStream(_) => None,
        }
    }
}

impl fmt::Debug for AlphaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaSource::Rational(r) => write!(f, "Rational({r})"),
            AlphaSource::Surd(s) => write!(f, "Surd({s})"),
            AlphaSource::ExplicitCf { prefix, period } => {
                write!(f, "ExplicitCf({prefix:?}, period {period:?})")
            }
            AlphaSource::TermStream(s) => write!(f, "TermStream(a0 = {})", s.a0),
        }
    }
}

/// A pull-based supplier of continued-fraction terms.
///
/// The iterator yields `a1, a2, ...`; running dry means "no more certified
/// terms", not "the expansion is finite".
pub struct TermStream {
    pub(crate) a0: BigInt,
    pub(crate) rest: Box<dyn Iterator<Item = BigInt> + Send>,
    pub(crate) bound: Option<BigInt>,
}

impl TermStream {
    pub fn new<I>(a0: impl Into<BigInt>, rest: I) -> Self
    where
        I: Iterator<Item = BigInt> + Send + 'static,
    {
        TermStream {
            a0: a0.into(),
            rest: Box::new(rest),
            bound: None,
        }
    }

    /// Declares that every term after `a0` is at most `bound`.
    pub fn with_bound(mut self, bound: impl Into<BigInt>) -> Self {
        self.bound = Some(bound.into());
        self
    }
}
