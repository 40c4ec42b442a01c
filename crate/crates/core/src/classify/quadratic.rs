use std::fmt;

use num_bigint::BigInt;

use super::{Finiteness, Side};
use crate::cf::{CfExpansion, Periodicity};
use crate::error::{Error, Result};

/// Which clause decided the kind-3 verdict for `α = [a0; a1, ..., a_m, (a_{m+1}, ..., a_{m+h})]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictCase {
    /// `m = 0`.
    NoPreperiod,
    /// `m` odd and `a_m < a_{m+h}`.
    OddPreperiodRising,
    /// `m` even, nonzero, and `a_m > a_{m+h}`.
    EvenPreperiodFalling,
    /// Everything else: `m` odd with `a_m > a_{m+h}` or `m` even with
    /// `a_m < a_{m+h}`.
    Opposite,
}

/// Which side of a quadratic irrational has only finitely many best
/// approximations of the 3rd kind, and how many at most.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticVerdict {
    pub case: VerdictCase,
    pub finite_side: Side,
    /// `1 + ⌈m/2⌉ + h` for the upper side, `⌊m/2⌋ + h` for the lower side.
    pub bound: u64,
    pub preperiod: usize,
    pub period: usize,
}

impl fmt::Display for QuadraticVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let why = match self.case {
            VerdictCase::NoPreperiod => "purely periodic",
            VerdictCase::OddPreperiodRising => "m odd and a_m < a_(m+h)",
            VerdictCase::EvenPreperiodFalling => "m even and a_m > a_(m+h)",
            VerdictCase::Opposite => "a_m against a_(m+h) points the other way",
        };
        write!(
            f,
            "m = {}, h = {}: {why}; {} side finite with at most {} members of the 3rd kind",
            self.preperiod, self.period, self.finite_side, self.bound
        )
    }
}

/// Decides which side of a periodic expansion has finitely many best
/// approximations of the 3rd kind.
///
/// The expansion is in minimal form (shortest period, earliest start), so
/// `a_m` and `a_{m+h}` always differ when `m > 0`.
///
/// ```
/// use onesided::cf::{cf_expand, AlphaSource};
/// use onesided::classify::{quadratic_kind3_verdict, Side};
/// use onesided::numeric::QuadraticSurd;
///
/// let root5 = cf_expand(AlphaSource::Surd(QuadraticSurd::sqrt(5).unwrap())).unwrap();
/// let v = quadratic_kind3_verdict(&root5).unwrap();
/// assert_eq!(v.finite_side, Side::Upper);
/// assert_eq!(v.bound, 2);
/// ```
pub fn quadratic_kind3_verdict(cf: &CfExpansion) -> Result<QuadraticVerdict> {
    let (m, h) = match cf.periodicity() {
        Periodicity::Periodic { preperiod, period } => (preperiod, period),
        Periodicity::Finite { .. } => return Err(Error::NotQuadratic),
        Periodicity::Unknown => return Err(Error::ExactnessRequired),
    };
    let case = if m == 0 {
        VerdictCase::NoPreperiod
    } else {
        let a_m: BigInt = cf.term_required(m)?;
        let a_mh: BigInt = cf.term_required(m + h)?;
        debug_assert_ne!(a_m, a_mh, "minimal form separates a_m and a_(m+h)");
        match (m % 2 == 1, a_m < a_mh) {
            (true, true) => VerdictCase::OddPreperiodRising,
            (false, false) => VerdictCase::EvenPreperiodFalling,
            _ => VerdictCase::Opposite,
        }
    };
    let (finite_side, bound) = match case {
        VerdictCase::Opposite => (Side::Lower, m / 2 + h),
        _ => (Side::Upper, 1 + m.div_ceil(2) + h),
    };
    Ok(QuadraticVerdict {
        case,
        finite_side,
        bound: bound as u64,
        preperiod: m,
        period: h,
    })
}

/// Finiteness for kinds ℓ >= 4 on either side.
///
/// Bounded partial quotients make `limsup log a_(2n+1) / (2n+1)` zero,
/// which is below `(ℓ-3) log φ`; nothing is claimed for unbounded or
/// undeclared streams.
pub fn finiteness_kind_ge4(cf: &CfExpansion, kind: u32, _side: Side) -> Finiteness {
    if kind >= 4 && cf.term_bound().is_some() {
        Finiteness::ProvenFinite { count: None }
    } else {
        Finiteness::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::{cf_expand, AlphaSource, TermStream};

    #[test]
    fn verdicts() {
        let phi = cf_expand(AlphaSource::cf([1], [1])).unwrap();
        let v = quadratic_kind3_verdict(&phi).unwrap();
        assert_eq!(
            (v.case, v.finite_side, v.bound),
            (VerdictCase::NoPreperiod, Side::Upper, 2)
        );
        let cf = cf_expand(AlphaSource::cf([0, 2], [1, 3])).unwrap();
        let v = quadratic_kind3_verdict(&cf).unwrap();
        assert_eq!(v.case, VerdictCase::OddPreperiodRising);
        assert_eq!(v.finite_side, Side::Upper);
        let cf = cf_expand(AlphaSource::cf([0, 4], [1, 3])).unwrap();
        let v = quadratic_kind3_verdict(&cf).unwrap();
        assert_eq!(
            (v.case, v.finite_side, v.bound),
            (VerdictCase::Opposite, Side::Lower, 2)
        );
        let r = cf_expand(AlphaSource::rational(7, 2)).unwrap();
        assert_eq!(quadratic_kind3_verdict(&r), Err(Error::NotQuadratic));
    }

    #[test]
    fn ge4_finiteness() {
        let phi = cf_expand(AlphaSource::cf([1], [1])).unwrap();
        assert_eq!(
            finiteness_kind_ge4(&phi, 1000, Side::Upper),
            Finiteness::ProvenFinite { count: None }
        );
        let s = cf_expand(AlphaSource::TermStream(TermStream::new(
            0,
            (1..).map(BigInt::from),
        )))
        .unwrap();
        assert_eq!(finiteness_kind_ge4(&s, 4, Side::Lower), Finiteness::Unknown);
    }
}
