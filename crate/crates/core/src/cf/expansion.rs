use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::source::{AlphaSource, TermStream};
use crate::error::{Error, Result};
use crate::numeric::{isqrt, BigRational, QuadraticSurd, RationalInterval};

/// Default number of terms examined before a stream comparison gives up.
pub const DEFAULT_COMPARISON_BUDGET: usize = 64;

/// Shape of the term sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Periodicity {
    /// `[a0; a1, ..., a_last]`, with `a_last != 1` unless `last == 0`.
    Finite {
        last: usize,
    },
    /// `[a0; a1, ..., a_m, (a_{m+1}, ..., a_{m+h})]` with minimal `m` and `h`.
    Periodic {
        preperiod: usize,
        period: usize,
    },
    Unknown,
}

enum Terms {
    Finite(Vec<BigInt>),
    Periodic {
        prefix: Vec<BigInt>,
        period: Vec<BigInt>,
    },
    Stream {
        memo: Mutex<StreamMemo>,
        bound: Option<BigInt>,
    },
}

struct StreamMemo {
    terms: Vec<BigInt>,
    rest: Option<Box<dyn Iterator<Item = BigInt> + Send>>,
}

/// A continued-fraction expansion with replayable terms.
///
/// Finite and eventually periodic expansions are held in full; stream-backed
/// ones memoize every term pulled so far behind a mutex, so one expansion can
/// be shared between threads.
pub struct CfExpansion {
    terms: Terms,
    periodicity: Periodicity,
    normalized: bool,
    budget: usize,
    exact: OnceLock<Option<QuadraticSurd>>,
}

impl std::fmt::Debug for CfExpansion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CfExpansion")
            .field("periodicity", &self.periodicity)
            .field("prefix", &self.materialized(8))
            .finish()
    }
}

/// Expands `alpha` into its regular continued fraction.
///
/// ```
/// use onesided::cf::{cf_expand, AlphaSource, Periodicity};
/// use onesided::numeric::QuadraticSurd;
///
/// let root5 = cf_expand(AlphaSource::Surd(QuadraticSurd::sqrt(5).unwrap())).unwrap();
/// assert_eq!(root5.periodicity(), Periodicity::Periodic { preperiod: 0, period: 1 });
/// assert_eq!(root5.prefix_strings(5), ["2", "4", "4", "4", "4"]);
/// ```
pub fn cf_expand(alpha: AlphaSource) -> Result<CfExpansion> {
    match alpha {
        AlphaSource::Rational(r) => Ok(CfExpansion::finite(euclid_terms(&r), false)),
        AlphaSource::Surd(s) => match s.to_rational() {
            Some(r) => Ok(CfExpansion::finite(euclid_terms(&r), false)),
            None => {
                let (prefix, period) = surd_terms(&s);
                let cf = CfExpansion::periodic(prefix, period);
                let _ = cf.exact.set(Some(s));
                Ok(cf)
            }
        },
        AlphaSource::ExplicitCf { prefix, period } => explicit(prefix, period),
        AlphaSource::TermStream(stream) => Ok(CfExpansion::stream(stream)),
    }
}

fn validate(terms: &[BigInt], offset: usize) -> Result<()> {
    for (i, t) in terms.iter().enumerate() {
        if i + offset > 0 && t < &BigInt::one() {
            return Err(Error::InvalidTerm {
                index: i + offset,
                value: t.to_string(),
            });
        }
    }
    Ok(())
}

fn explicit(mut prefix: Vec<BigInt>, period: Vec<BigInt>) -> Result<CfExpansion> {
    if prefix.is_empty() {
        return Err(Error::EmptyExpansion);
    }
    validate(&prefix, 0)?;
    validate(&period, prefix.len())?;
    if period.is_empty() {
        // [.., x, 1] = [.., x + 1]
        let mut normalized = false;
        if prefix.len() > 1 && prefix.last().unwrap().is_one() {
            prefix.pop();
            *prefix.last_mut().unwrap() += 1;
            normalized = true;
        }
        return Ok(CfExpansion::finite(prefix, normalized));
    }
    let (prefix, period) = minimize_periodic(prefix, period);
    Ok(CfExpansion::periodic(prefix, period))
}

/// Shortest period, then earliest start (never moving `a0` into the period).
pub(crate) fn minimize_periodic(
    mut prefix: Vec<BigInt>,
    mut period: Vec<BigInt>,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let h = period.len();
    if let Some(d) = (1..=h).find(|&d| h % d == 0 && (d..h).all(|i| period[i] == period[i - d])) {
        period.truncate(d);
    }
    while prefix.len() > 1 && prefix.last() == period.last() {
        let last = prefix.pop().unwrap();
        period.pop();
        period.insert(0, last);
    }
    (prefix, period)
}

/// Euclidean algorithm; the last term is never 1 unless it is `a0`.
pub(crate) fn euclid_terms(r: &BigRational) -> Vec<BigInt> {
    let mut num = r.numer().clone();
    let mut den = r.denom().clone();
    let mut terms = Vec::new();
    loop {
        let (q, rem) = num.div_mod_floor(&den);
        terms.push(q);
        if rem.is_zero() {
            break;
        }
        num = den;
        den = rem;
    }
    terms
}

/// Complete-quotient iteration `x = (P + √D)/Q`, stopping at the first
/// repeated state. Returns `(prefix, period)` with `prefix = [a0, ..., a_m]`.
fn surd_terms(x: &QuadraticSurd) -> (Vec<BigInt>, Vec<BigInt>) {
    let r = x.r();
    let d = x.q() * x.q() * x.d() * r * r;
    let (mut p, mut q) = if x.q().is_positive() {
        (x.p() * r, r * r)
    } else {
        (-(x.p() * r), -(r * r))
    };
    let root = isqrt(&d);
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut terms: Vec<BigInt> = Vec::new();
    let start = loop {
        if let Some(&i) = seen.get(&(p.clone(), q.clone())) {
            break i;
        }
        seen.insert((p.clone(), q.clone()), terms.len());
        let a = if q.is_positive() {
            (&p + &root).div_floor(&q)
        } else {
            (-&p - &root - BigInt::one()).div_floor(&-&q)
        };
        let p_next = &a * &q - &p;
        let q_next = (&d - &p_next * &p_next) / &q;
        terms.push(a);
        p = p_next;
        q = q_next;
    };
    if start == 0 {
        // purely periodic: keep a0 out of the period and rotate
        let mut period: Vec<BigInt> = terms[1..].to_vec();
        period.push(terms[0].clone());
        (vec![terms[0].clone()], period)
    } else {
        let period = terms.split_off(start);
        (terms, period)
    }
}

impl CfExpansion {
    fn finite(terms: Vec<BigInt>, normalized: bool) -> Self {
        let last = terms.len() - 1;
        CfExpansion {
            terms: Terms::Finite(terms),
            periodicity: Periodicity::Finite { last },
            normalized,
            budget: DEFAULT_COMPARISON_BUDGET,
            exact: OnceLock::new(),
        }
    }

    fn periodic(prefix: Vec<BigInt>, period: Vec<BigInt>) -> Self {
        let periodicity = Periodicity::Periodic {
            preperiod: prefix.len() - 1,
            period: period.len(),
        };
        CfExpansion {
            terms: Terms::Periodic { prefix, period },
            periodicity,
            normalized: false,
            budget: DEFAULT_COMPARISON_BUDGET,
            exact: OnceLock::new(),
        }
    }

    fn stream(stream: TermStream) -> Self {
        CfExpansion {
            terms: Terms::Stream {
                memo: Mutex::new(StreamMemo {
                    terms: vec![stream.a0],
                    rest: Some(stream.rest),
                }),
                bound: stream.bound,
            },
            periodicity: Periodicity::Unknown,
            normalized: false,
            budget: DEFAULT_COMPARISON_BUDGET,
            exact: OnceLock::new(),
        }
    }

    /// Overrides the term budget used by stream comparisons.
    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn periodicity(&self) -> Periodicity {
        self.periodicity
    }

    /// True when a trailing term 1 was folded into its predecessor.
    pub fn was_normalized(&self) -> bool {
        self.normalized
    }

    pub fn is_stream(&self) -> bool {
        matches!(self.terms, Terms::Stream { .. })
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.periodicity, Periodicity::Finite { .. })
    }

    /// Declared (or structural) upper bound on the terms after `a0`.
    pub fn term_bound(&self) -> Option<BigInt> {
        match &self.terms {
            Terms::Finite(t) => Some(t.iter().skip(1).max().cloned().unwrap_or_else(BigInt::one)),
            Terms::Periodic { prefix, period } => {
                prefix.iter().skip(1).chain(period.iter()).max().cloned()
            }
            Terms::Stream { bound, .. } => bound.clone(),
        }
    }

    /// Term `a_j`. `Ok(None)` past the end of a finite expansion;
    /// [`Error::InsufficientTerms`] when a stream runs dry.
    pub fn term(&self, j: usize) -> Result<Option<BigInt>> {
        match &self.terms {
            Terms::Finite(t) => Ok(t.get(j).cloned()),
            Terms::Periodic { prefix, period } => Ok(Some(if j < prefix.len() {
                prefix[j].clone()
            } else {
                period[(j - prefix.len()) % period.len()].clone()
            })),
            Terms::Stream { memo, .. } => {
                let mut memo = memo.lock().unwrap();
                while memo.terms.len() <= j {
                    let next = memo.rest.as_mut().and_then(|it| it.next());
                    match next {
                        Some(t) if t >= BigInt::one() => memo.terms.push(t),
                        Some(t) => {
                            memo.rest = None;
                            return Err(Error::InvalidTerm {
                                index: memo.terms.len(),
                                value: t.to_string(),
                            });
                        }
                        None => {
                            memo.rest = None;
                            return Err(Error::InsufficientTerms(j));
                        }
                    }
                }
                Ok(Some(memo.terms[j].clone()))
            }
        }
    }

    /// Term `a_j`, which must exist.
    pub(crate) fn term_required(&self, j: usize) -> Result<BigInt> {
        match self.term(j)? {
            Some(t) => Ok(t),
            None => Err(Error::NoTail(self.last_index().unwrap_or(j))),
        }
    }

    /// Index of the final term of a finite expansion.
    pub fn last_index(&self) -> Option<usize> {
        match self.periodicity {
            Periodicity::Finite { last } => Some(last),
            _ => None,
        }
    }

    /// Up to `n` terms that can be produced without error.
    pub fn materialized(&self, n: usize) -> Vec<BigInt> {
        (0..n).map_while(|j| self.term(j).ok().flatten()).collect()
    }

    pub fn prefix_strings(&self, n: usize) -> Vec<String> {
        self.materialized(n).iter().map(|t| t.to_string()).collect()
    }

    /// Preperiod `[a0, ..., a_m]` and period of a periodic expansion.
    pub fn periodic_parts(&self) -> Option<(&[BigInt], &[BigInt])> {
        match &self.terms {
            Terms::Periodic { prefix, period } => Some((prefix, period)),
            _ => None,
        }
    }

    /// Exact value for finite and periodic expansions.
    pub fn exact_value(&self) -> Option<QuadraticSurd> {
        self.exact
            .get_or_init(|| match &self.terms {
                Terms::Finite(t) => Some(QuadraticSurd::from_rational(&evaluate_finite(t))),
                Terms::Periodic { prefix, period } => {
                    let tail = solve_purely_periodic(period, None);
                    Some(compose(prefix, &tail))
                }
                Terms::Stream { .. } => None,
            })
            .clone()
    }

    /// Squarefree radicand of an exact quadratic value.
    pub(crate) fn radicand(&self) -> Option<BigInt> {
        self.exact_value()
            .filter(|v| !v.is_rational())
            .map(|v| v.d().clone())
    }

    /// Exact complete quotient `x_j = [a_j; a_{j+1}, ...]`.
    ///
    /// Errors with [`Error::NoTail`] past the end of a finite expansion and
    /// with [`Error::ExactnessRequired`] for streams.
    pub fn complete_quotient(&self, j: usize) -> Result<QuadraticSurd> {
        match &self.terms {
            Terms::Finite(t) => {
                if j >= t.len() {
                    return Err(Error::NoTail(t.len() - 1));
                }
                Ok(QuadraticSurd::from_rational(&evaluate_finite(&t[j..])))
            }
            Terms::Periodic { prefix, period } => {
                let start = prefix.len();
                if j >= start {
                    let shift = (j - start) % period.len();
                    let rotated: Vec<BigInt> = period[shift..]
                        .iter()
                        .chain(period[..shift].iter())
                        .cloned()
                        .collect();
                    Ok(solve_purely_periodic(&rotated, self.radicand().as_ref()))
                } else {
                    let tail = solve_purely_periodic(period, self.radicand().as_ref());
                    Ok(compose(&prefix[j..], &tail))
                }
            }
            Terms::Stream { .. } => Err(Error::ExactnessRequired),
        }
    }

    /// Enclosure of `x_j = [a_j; a_{j+1}, ...]` from at most `depth` terms.
    ///
    /// With terms `t_1..t_k` available, the value is bracketed by replacing
    /// the last complete quotient by `t_k` and `t_k + 1`.
    pub fn quotient_enclosure(&self, j: usize, depth: usize) -> Result<RationalInterval> {
        let mut terms = Vec::new();
        for i in j..j + depth.max(1) {
            match self.term(i) {
                Ok(Some(t)) => terms.push(t),
                Ok(None) => {
                    if terms.is_empty() {
                        return Err(Error::NoTail(i.saturating_sub(1)));
                    }
                    return Ok(RationalInterval::point(evaluate_finite(&terms)));
                }
                Err(Error::InsufficientTerms(_)) if !terms.is_empty() => break,
                Err(e) => return Err(e),
            }
        }
        let low = evaluate_finite(&terms);
        let last = terms.last_mut().unwrap();
        *last += 1;
        let high = evaluate_finite(&terms);
        Ok(RationalInterval::hull(low, high))
    }

    /// Enclosure of `α` itself (a point for exact expansions).
    pub fn value_enclosure(&self, depth: usize) -> Result<RationalInterval> {
        if let Some(x) = self.exact_value() {
            if let Some(r) = x.to_rational() {
                return Ok(RationalInterval::point(r));
            }
        }
        self.quotient_enclosure(0, depth)
    }
}

/// Value of a finite continued fraction `[t0; t1, ..., tk]`.
pub(crate) fn evaluate_finite(terms: &[BigInt]) -> BigRational {
    let mut iter = terms.iter().rev();
    let mut acc = BigRational::from_integer(iter.next().expect("nonempty terms").clone());
    for t in iter {
        acc = BigRational::from_integer(t.clone()) + acc.recip();
    }
    acc
}

/// `[t0; t1, ..., tk, tail]` for an exact tail value `tail > 0`.
pub(crate) fn compose(terms: &[BigInt], tail: &QuadraticSurd) -> QuadraticSurd {
    let mut acc = tail.clone();
    for t in terms.iter().rev() {
        acc = acc
            .recip()
            .expect("complete quotients are positive")
            .add_integer(t);
    }
    acc
}

/// Positive root of `x = [b1; b2, ..., bh, x]`.
///
/// `core` names the squarefree radicand when the field is already known,
/// which spares factoring the discriminant of a long block.
pub(crate) fn solve_purely_periodic(block: &[BigInt], core: Option<&BigInt>) -> QuadraticSurd {
    // convergents of [b1; ..., bh]: P/Q and the previous P'/Q'
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p, mut q) = (block[0].clone(), BigInt::one());
    for b in &block[1..] {
        let p_next = b * &p + &p_prev;
        let q_next = b * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    // Q x² + (Q' - P) x - P' = 0
    let lin = &p - &q_prev;
    let disc = &lin * &lin + BigInt::from(4) * &q * &p_prev;
    let r = BigInt::from(2) * q;
    match core {
        Some(core) => QuadraticSurd::with_core(lin, 1, disc, r, core),
        None => QuadraticSurd::new(lin, 1, disc, r),
    }
    .expect("positive discriminant")
}
