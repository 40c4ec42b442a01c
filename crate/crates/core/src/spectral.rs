//! Spectral gaps of a periodic rectangular lattice quantum graph with
//! repulsive δ potentials in the vertices.
//!
//! With edge lengths `a`, `b` and coupling `u > 0`, a gap sits next to
//! `(mπ/a)²` exactly when
//!
//! ```text
//! (2m/π) tan((π/2) {mθ}) < u a / π²,      θ = b/a,
//! ```
//!
//! and next to `(mπ/b)²` under the same condition with `θ` replaced by
//! `a/b` and `u a` by `u b`. When both ratios have infinitely many best
//! lower approximations of the 3rd kind, the number of gaps is infinite or
//! zero, decided by comparing `u a / π²` and `u b / π²` against the limits
//! `L` of `m_n {m_n θ}` along those approximations.
//!
//! Everything involving `π` is evaluated with certified interval arithmetic
//! at doubling precision; undecidable comparisons are reported, not guessed.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::cf::{cf_expand, p_quantity, solve_purely_periodic, AlphaSource, CfExpansion};
use crate::classify::{quadratic_kind3_verdict, Side};
use crate::error::{Error, Result};
use crate::numeric::{
    pi_enclosure, tan_enclosure, BigRational, FixedInterval, QuadraticSurd, RationalInterval,
};

/// Lowest working precision, in bits.
pub const START_BITS: u32 = 64;
/// Default precision ceiling, in bits.
pub const DEFAULT_MAX_BITS: u32 = 4096;

/// The right-hand side `ρ` of a gap condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rho {
    /// A fixed enclosure of `ρ`.
    Enclosure(RationalInterval),
    /// `ρ = c / π²` for an exact `c`, refined together with `π`.
    OverPiSquared(QuadraticSurd),
}

impl Rho {
    /// Enclosure of `ρ` at the given precision.
    pub fn enclose(&self, bits: u32) -> Result<FixedInterval> {
        match self {
            Rho::Enclosure(i) => Ok(FixedInterval::from_interval(i, bits)),
            Rho::OverPiSquared(c) => {
                let pi = pi_enclosure(bits);
                FixedInterval::from_surd(c, bits).div(&pi.mul(&pi))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GapAnswer {
    /// The condition holds; carries a certified enclosure of its left side.
    Yes(RationalInterval),
    No,
    Undecided,
}

/// `{mθ}`, exactly or as an enclosure.
enum Fraction {
    Exact(QuadraticSurd),
    Enclosure(RationalInterval),
}

fn fractional_part(m: &BigInt, theta: &CfExpansion) -> Result<Fraction> {
    if let Some(t) = theta.exact_value() {
        return Ok(Fraction::Exact(t.mul_integer(m).fract()));
    }
    let enc = theta.value_enclosure(theta.budget())?;
    let scaled = enc.mul(&RationalInterval::point(BigRational::from_integer(
        m.clone(),
    )));
    let floor_lo = scaled.lo().floor().to_integer();
    let floor_hi = scaled.hi().floor().to_integer();
    if floor_lo != floor_hi {
        return Err(Error::FloorUndecided(m.clone()));
    }
    let shift = -BigRational::from_integer(floor_lo);
    Ok(Fraction::Enclosure(scaled.add_rational(&shift)))
}

/// Certified enclosure of `(2m/π) tan((π/2) {mθ})` at `bits` of precision.
pub fn condition_value(m: &BigInt, theta: &CfExpansion, bits: u32) -> Result<FixedInterval> {
    let f = match fractional_part(m, theta)? {
        Fraction::Exact(f) => FixedInterval::from_surd(&f, bits),
        Fraction::Enclosure(i) => FixedInterval::from_interval(&i, bits),
    };
    lhs_from_fraction(m, &f, bits)
}

fn lhs_from_fraction(m: &BigInt, f: &FixedInterval, bits: u32) -> Result<FixedInterval> {
    let pi = pi_enclosure(bits);
    let x = pi.mul(f).div_integer(&BigInt::from(2));
    let x = clamp_nonnegative(&x);
    let tan = tan_enclosure(&x)?;
    tan.mul_integer(&(m * 2)).div(&pi)
}

fn clamp_nonnegative(x: &FixedInterval) -> FixedInterval {
    // rounding can push an exact zero slightly below 0
    let r = x.to_rational_interval();
    if r.lo().is_negative() {
        let hi = r.hi().clone().max(num_traits::Zero::zero());
        FixedInterval::from_interval(
            &RationalInterval::hull(num_traits::Zero::zero(), hi),
            x.bits(),
        )
    } else {
        x.clone()
    }
}

/// Decides `(2m/π) tan((π/2) {mθ}) < ρ` with the default precision ceiling.
///
/// ```
/// use onesided::cf::{cf_expand, AlphaSource};
/// use onesided::numeric::{BigInt, BigRational, QuadraticSurd, RationalInterval};
/// use onesided::spectral::{gap_present, GapAnswer, Rho};
///
/// let theta = cf_expand(AlphaSource::Surd(QuadraticSurd::sqrt(5).unwrap())).unwrap();
/// let rho = |x: i64| Rho::Enclosure(RationalInterval::point(BigRational::new(x.into(), 100.into())));
/// let m = BigInt::from(17);
/// assert!(matches!(gap_present(&m, &theta, &rho(30)).unwrap(), GapAnswer::Yes(_)));
/// assert_eq!(gap_present(&m, &theta, &rho(20)).unwrap(), GapAnswer::No);
/// ```
pub fn gap_present(m: &BigInt, theta: &CfExpansion, rho: &Rho) -> Result<GapAnswer> {
    gap_present_with(m, theta, rho, DEFAULT_MAX_BITS)
}

/// [`gap_present`] with an explicit precision ceiling.
pub fn gap_present_with(
    m: &BigInt,
    theta: &CfExpansion,
    rho: &Rho,
    max_bits: u32,
) -> Result<GapAnswer> {
    if !m.is_positive() {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let frac = fractional_part(m, theta)?;
    if let Fraction::Exact(f) = &frac {
        if f.is_zero() {
            let rho0 = rho.enclose(START_BITS)?;
            if rho0.try_cmp(&FixedInterval::from_integer(&BigInt::zero(), START_BITS))
                == Some(Ordering::Greater)
            {
                return Ok(GapAnswer::Yes(RationalInterval::point(
                    num_traits::Zero::zero(),
                )));
            }
        }
    }
    // tan x >= x, so the left side is at least m {mθ}
    let rho_hi = rho.enclose(START_BITS)?.to_rational_interval().hi().clone();
    let floor_value = match &frac {
        Fraction::Exact(f) => f.mul_integer(m).cmp_rational(&rho_hi) != Ordering::Less,
        Fraction::Enclosure(i) => i.lo() * BigRational::from_integer(m.clone()) >= rho_hi,
    };
    if floor_value {
        return Ok(GapAnswer::No);
    }
    let mut bits = START_BITS;
    while bits <= max_bits {
        let f = match &frac {
            Fraction::Exact(f) => FixedInterval::from_surd(f, bits),
            Fraction::Enclosure(i) => FixedInterval::from_interval(i, bits),
        };
        match lhs_from_fraction(m, &f, bits) {
            Ok(lhs) => match lhs.try_cmp(&rho.enclose(bits)?) {
                Some(Ordering::Less) => return Ok(GapAnswer::Yes(lhs.to_rational_interval())),
                Some(_) => return Ok(GapAnswer::No),
                None => {}
            },
            Err(Error::BoundaryUndecided(_)) => {}
            Err(e) => return Err(e),
        }
        bits *= 2;
    }
    Ok(GapAnswer::Undecided)
}

/// `S = sup P(n)` over even `n` for a periodic expansion: the exact values up
/// to `n = m + 2h` together with the limit of each even residue class.
pub(crate) fn sup_even_p(cf: &CfExpansion) -> Result<QuadraticSurd> {
    let (prefix, period) = cf.periodic_parts().ok_or(Error::NotQuadratic)?;
    let m = prefix.len() - 1;
    let h = period.len();
    let mut best: Option<QuadraticSurd> = None;
    let mut consider = |v: QuadraticSurd| -> Result<()> {
        if best
            .as_ref()
            .map_or(Ok(true), |b| v.cmp_exact(b).map(|o| o == Ordering::Greater))?
        {
            best = Some(v);
        }
        Ok(())
    };
    for n in (0..=m + 2 * h).step_by(2) {
        let p = p_quantity(cf, n)?;
        consider(p.exact().cloned().ok_or(Error::ExactnessRequired)?)?;
    }
    // backward values along n, n + 2h, ... converge to [0; (a_n, ..., a_{n-h+1})]
    for n0 in (m + h..m + 3 * h).filter(|n| n % 2 == 0) {
        let block: Vec<BigInt> = (0..h)
            .map(|i| cf.term_required(n0 - i))
            .collect::<Result<_>>()?;
        let back = solve_purely_periodic(&block, cf.radicand().as_ref()).recip()?;
        let tail = cf.complete_quotient(n0 + 1)?;
        consider(tail.try_add(&back)?)?;
    }
    Ok(best.expect("at least P(0)"))
}

/// `L = lim m_n {m_n θ}` along the best lower approximations of the 3rd kind
/// `k_n/m_n` of a quadratic irrational `θ`.
///
/// ```
/// use onesided::cf::{cf_expand, AlphaSource};
/// use onesided::numeric::QuadraticSurd;
/// use onesided::spectral::gap_threshold_l;
///
/// let phi = cf_expand(AlphaSource::cf([1], [1])).unwrap();
/// // 1/√5
/// assert_eq!(gap_threshold_l(&phi).unwrap(), QuadraticSurd::new(0, 1, 5, 5).unwrap());
/// ```
pub fn gap_threshold_l(theta: &CfExpansion) -> Result<QuadraticSurd> {
    let verdict = quadratic_kind3_verdict(theta)?;
    if verdict.finite_side == Side::Lower {
        return Err(Error::NoLimitStructure);
    }
    sup_even_p(theta)?.recip()
}

/// Edge lengths and coupling of the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeParams {
    pub a: QuadraticSurd,
    pub b: QuadraticSurd,
    pub u: QuadraticSurd,
}

impl LatticeParams {
    /// Checks positivity and that `b/a` stays in one quadratic field.
    pub fn new(a: QuadraticSurd, b: QuadraticSurd, u: QuadraticSurd) -> Result<Self> {
        for (name, v) in [("a", &a), ("b", &b), ("u", &u)] {
            if v.signum() != Ordering::Greater {
                return Err(Error::InvalidArgument(format!("{name} must be positive")));
            }
        }
        a.common_radicand(&b)?;
        a.common_radicand(&u)?;
        b.common_radicand(&u)?;
        Ok(LatticeParams { a, b, u })
    }

    /// `θ = b/a`.
    pub fn theta(&self) -> Result<QuadraticSurd> {
        self.b.try_div(&self.a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Gaps next to `(mπ/a)²`.
    A,
    /// Gaps next to `(mπ/b)²`.
    B,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GapClass {
    Infinite,
    Zero,
    Unknown,
}

impl fmt::Display for GapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GapClass::Infinite => "infinite",
            GapClass::Zero => "zero",
            GapClass::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapSolution {
    pub m: u64,
    pub family: Family,
    /// Certified enclosure of the left side of the condition.
    pub value: RationalInterval,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    /// Ordered by `m`, family A before B.
    pub solutions: Vec<GapSolution>,
    /// `m` values whose condition stayed undecided at the precision ceiling.
    pub undecided: Vec<(u64, Family)>,
    pub classification: GapClass,
    /// `(L_a, L_b)` where they exist.
    pub thresholds: (Option<QuadraticSurd>, Option<QuadraticSurd>),
    /// Enclosures of `(u a / π², u b / π²)`.
    pub rho: (RationalInterval, RationalInterval),
    pub diagnostics: Vec<String>,
}

fn threshold_or_note(
    theta: &CfExpansion,
    label: &str,
    notes: &mut Vec<String>,
) -> Result<Option<QuadraticSurd>> {
    match gap_threshold_l(theta) {
        Ok(l) => Ok(Some(l)),
        Err(e @ (Error::NotQuadratic | Error::NoLimitStructure | Error::ExactnessRequired)) => {
            notes.push(format!("{label}: {e}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Whether `c / π² > l`, refining `π` up to `max_bits`.
fn exceeds(c: &QuadraticSurd, l: &QuadraticSurd, max_bits: u32) -> Result<bool> {
    let mut bits = START_BITS;
    while bits <= max_bits {
        let rho = Rho::OverPiSquared(c.clone()).enclose(bits)?;
        match rho.try_cmp_surd(l) {
            Some(Ordering::Greater) => return Ok(true),
            Some(_) => return Ok(false),
            None => bits *= 2,
        }
    }
    Err(Error::BoundaryUndecided(max_bits))
}

/// Classifies the gap count and lists the solutions `m <= m_max` of both
/// conditions.
pub fn classify_gaps(params: &LatticeParams, m_max: u64, max_bits: u32) -> Result<GapReport> {
    let theta = params.theta()?;
    let theta_cf = cf_expand(AlphaSource::Surd(theta.clone()))?;
    let inv_cf = cf_expand(AlphaSource::Surd(theta.recip()?))?;
    let c_a = params.u.try_mul(&params.a)?;
    let c_b = params.u.try_mul(&params.b)?;

    let mut diagnostics = Vec::new();
    let l_a = threshold_or_note(&theta_cf, "b/a", &mut diagnostics)?;
    let l_b = threshold_or_note(&inv_cf, "a/b", &mut diagnostics)?;
    let classification = match (&l_a, &l_b) {
        (Some(la), Some(lb)) => {
            let above_a = exceeds(&c_a, la, max_bits)?;
            let above_b = exceeds(&c_b, lb, max_bits)?;
            if above_a || above_b {
                GapClass::Infinite
            } else {
                GapClass::Zero
            }
        }
        _ => GapClass::Unknown,
    };

    let rho_a = Rho::OverPiSquared(c_a);
    let rho_b = Rho::OverPiSquared(c_b);
    let answers: Vec<(u64, GapAnswer, GapAnswer)> = (1..=m_max)
        .into_par_iter()
        .map(|m| {
            let big = BigInt::from(m);
            let a = gap_present_with(&big, &theta_cf, &rho_a, max_bits)?;
            let b = gap_present_with(&big, &inv_cf, &rho_b, max_bits)?;
            Ok((m, a, b))
        })
        .collect::<Result<_>>()?;

    let mut solutions = Vec::new();
    let mut undecided = Vec::new();
    for (m, a, b) in answers {
        for (family, answer) in [(Family::A, a), (Family::B, b)] {
            match answer {
                GapAnswer::Yes(value) => solutions.push(GapSolution { m, family, value }),
                GapAnswer::Undecided => undecided.push((m, family)),
                GapAnswer::No => {}
            }
        }
    }
    let rho_report = |r: &Rho| r.enclose(128).map(|f| f.to_rational_interval());
    Ok(GapReport {
        solutions,
        undecided,
        classification,
        thresholds: (l_a, l_b),
        rho: (rho_report(&rho_a)?, rho_report(&rho_b)?),
        diagnostics,
    })
}
