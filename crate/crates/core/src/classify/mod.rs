//! Best one-sided Diophantine approximations of the ℓ-th kind.
//!
//! A fraction `p/q ≤ α` is a best lower approximation of the ℓ-th kind when
//! its weighted error `q^(ℓ-1) (α - p/q)` is strictly smaller than that of
//! every other fraction `p'/q' ≤ α` with `q' ≤ q`; upper approximations are
//! the mirror image. Fractions are identified by their reduced value.
//!
//! [`brute_force_oracle`] applies that definition directly. The enumerators
//! only look at the few candidates that can qualify (convergents,
//! semiconvergents and `⌈α⌉/1`) and are checked against the oracle in tests.

mod criteria;
mod oracle;
mod quadratic;

use std::fmt;

use num_bigint::BigInt;

use crate::cf::{CfExpansion, FractionRecord, RealValue};
use crate::error::{Error, Result};

pub use criteria::{enumerate_kind_1_2, enumerate_kind_3, enumerate_kind_ge4};
pub use oracle::brute_force_oracle;
pub use quadratic::{finiteness_kind_ge4, quadratic_kind3_verdict, QuadraticVerdict, VerdictCase};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Lower,
    Upper,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Lower => Side::Upper,
            Side::Upper => Side::Lower,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
        })
    }
}

/// What to classify: `α`, the kind ℓ, the side and a denominator bound.
#[derive(Clone, Copy, Debug)]
pub struct Query<'a> {
    pub alpha: &'a CfExpansion,
    pub kind: u32,
    pub side: Side,
    pub q_max: u64,
}

impl<'a> Query<'a> {
    pub fn new(alpha: &'a CfExpansion, kind: u32, side: Side, q_max: u64) -> Result<Self> {
        if kind == 0 {
            return Err(Error::InvalidArgument("kind must be at least 1".into()));
        }
        if q_max == 0 {
            return Err(Error::InvalidArgument("q_max must be at least 1".into()));
        }
        Ok(Query {
            alpha,
            kind,
            side,
            q_max,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finiteness {
    /// Finitely many members; `count` is the total over all denominators
    /// when it is known.
    ProvenFinite {
        count: Option<BigInt>,
    },
    ProvenInfinite,
    /// Nothing is claimed beyond the listed members up to this bound.
    UnknownBeyond(u64),
    /// No claim at all.
    Unknown,
}

impl fmt::Display for Finiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finiteness::ProvenFinite { count: Some(c) } => write!(f, "finite ({c} in total)"),
            Finiteness::ProvenFinite { count: None } => write!(f, "finite"),
            Finiteness::ProvenInfinite => write!(f, "infinite"),
            Finiteness::UnknownBeyond(q) => write!(f, "unknown beyond q = {q}"),
            Finiteness::Unknown => write!(f, "unknown"),
        }
    }
}

/// Why a fraction was accepted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `α` itself, with weighted error 0.
    ExactHit,
    /// `⌈α⌉/1`, the only upper candidate with denominator 1.
    CeilUnit,
    /// Intermediate fraction of the right parity (kinds 1 and 2).
    Intermediate { n: usize, r: u64 },
    /// Convergent whose weighted error beats every earlier candidate of the
    /// same parity (kinds 3 and up).
    RunningMinimum { n: usize },
    /// Found by scanning every denominator.
    Definition,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::ExactHit => write!(f, "equals alpha"),
            Witness::CeilUnit => write!(f, "ceil(alpha)/1"),
            Witness::Intermediate { n, r } => write!(f, "intermediate fraction n = {n}, r = {r}"),
            Witness::RunningMinimum { n } => {
                write!(f, "convergent {n} beats all earlier candidates")
            }
            Witness::Definition => write!(f, "definition scan"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Member {
    pub fraction: FractionRecord,
    /// `q^(ℓ-1) |α - p/q|`.
    pub weighted_error: RealValue,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    pub kind: u32,
    pub side: Side,
    pub q_max: u64,
    /// Sorted by denominator.
    pub members: Vec<Member>,
    pub finiteness: Finiteness,
    /// False when the scan stopped short of `q_max` (a stream ran dry or a
    /// comparison stayed undecided), so `members` may be missing entries.
    pub exhaustive: bool,
    pub diagnostics: Vec<String>,
}

impl ClassificationResult {
    /// `(p, q)` pairs in order.
    pub fn fractions(&self) -> Vec<(BigInt, BigInt)> {
        self.members
            .iter()
            .map(|m| (m.fraction.p.clone(), m.fraction.q.clone()))
            .collect()
    }
}

/// Runs the enumerator matching `query.kind`.
///
/// ```
/// use onesided::cf::{cf_expand, AlphaSource};
/// use onesided::classify::{classify, Query, Side};
/// use onesided::numeric::QuadraticSurd;
///
/// let root5 = cf_expand(AlphaSource::Surd(QuadraticSurd::sqrt(5).unwrap())).unwrap();
/// let res = classify(&Query::new(&root5, 2, Side::Lower, 5).unwrap()).unwrap();
/// let shown: Vec<String> = res.members.iter().map(|m| m.fraction.to_string()).collect();
/// assert_eq!(shown, ["2/1", "11/5"]);
/// ```
pub fn classify(query: &Query) -> Result<ClassificationResult> {
    match query.kind {
        1 | 2 => enumerate_kind_1_2(query),
        3 => enumerate_kind_3(query),
        _ => enumerate_kind_ge4(query),
    }
}
