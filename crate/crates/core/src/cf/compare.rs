use std::cmp::Ordering;

use num_integer::Integer;

use super::expansion::{cf_expand, CfExpansion, Periodicity};
use super::source::AlphaSource;
use crate::error::{Error, Result};

/// Orders two reals given as sources.
///
/// ```
/// use std::cmp::Ordering;
/// use onesided::cf::{compare_reals, AlphaSource};
///
/// let x = AlphaSource::cf([3, 7, 15], Vec::<i64>::new());
/// let y = AlphaSource::cf([3, 7, 16], Vec::<i64>::new());
/// // 333/106 < 355/113
/// assert_eq!(compare_reals(x, y).unwrap(), Ordering::Less);
/// ```
pub fn compare_reals(x: AlphaSource, y: AlphaSource) -> Result<Ordering> {
    compare_expansions(&cf_expand(x)?, &cf_expand(y)?)
}

/// Orders two expansions.
///
/// Exact values in a common field are compared directly. Otherwise the terms
/// are walked until the first index `j` where they differ: at even `j` the
/// smaller term gives the smaller number, at odd `j` the larger one does. A
/// finite expansion ending at index `n` while the other continues is the
/// smaller one iff `n` is even. Streams that agree through the budget of
/// either expansion give [`Error::Undecided`].
pub fn compare_expansions(x: &CfExpansion, y: &CfExpansion) -> Result<Ordering> {
    if let (Some(a), Some(b)) = (x.exact_value(), y.exact_value()) {
        if a.is_rational() || b.is_rational() || a.d() == b.d() {
            return a.cmp_exact(&b);
        }
    }
    // two periodic expansions that agree this far agree forever
    let limit = match (x.periodicity(), y.periodicity()) {
        (
            Periodicity::Periodic {
                preperiod: m1,
                period: h1,
            },
            Periodicity::Periodic {
                preperiod: m2,
                period: h2,
            },
        ) => Some(m1.max(m2) + h1.lcm(&h2) + 1),
        (Periodicity::Finite { last: a }, Periodicity::Finite { last: b }) => Some(a.max(b) + 1),
        (Periodicity::Finite { last }, _) | (_, Periodicity::Finite { last }) => Some(last + 2),
        _ => None,
    };
    let budget = x.budget().min(y.budget());
    let end = limit.unwrap_or(budget);
    for j in 0..end {
        let a = x.term(j)?;
        let b = y.term(j)?;
        let even = j % 2 == 0;
        match (a, b) {
            (None, None) => return Ok(Ordering::Equal),
            (None, Some(_)) => {
                return Ok(if (j - 1) % 2 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                })
            }
            (Some(_), None) => {
                return Ok(if (j - 1) % 2 == 0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                })
            }
            (Some(a), Some(b)) => match a.cmp(&b) {
                Ordering::Equal => {}
                ord if even => return Ok(ord),
                ord => return Ok(ord.reverse()),
            },
        }
    }
    match limit {
        Some(_) => Ok(Ordering::Equal),
        None => Err(Error::Undecided(budget)),
    }
}
