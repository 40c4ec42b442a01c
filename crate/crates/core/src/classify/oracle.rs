use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{ClassificationResult, Finiteness, Member, Query, Side, Witness};
use crate::cf::{ConvergentIter, FractionRecord, Origin, RealValue};
use crate::error::{Error, Result};
use crate::numeric::{pow, BigRational, QuadraticSurd};

/// Scans every denominator `1..=q_max` and applies the definition.
///
/// For each `q` the only side-respecting numerator that can matter is
/// `⌊qα⌋` (lower) or `⌈qα⌉` (upper); unreduced fractions repeat an earlier
/// value and are skipped. A fraction is kept when its weighted error is
/// strictly below the running minimum. Needs an exact `α`.
pub fn brute_force_oracle(query: &Query) -> Result<ClassificationResult> {
    let cf = query.alpha;
    let alpha = cf.exact_value().ok_or(Error::ExactnessRequired)?;
    let mut best: Option<QuadraticSurd> = None;
    let mut members = Vec::new();
    for q in 1..=query.q_max {
        let q = BigInt::from(q);
        let scaled = alpha.mul_integer(&q);
        let p = match query.side {
            Side::Lower => scaled.floor(),
            Side::Upper => scaled.ceil(),
        };
        if !p.gcd(&q).is_one() {
            continue;
        }
        // q^(ℓ-1) |α - p/q| = q^(ℓ-2) |qα - p|
        let gap = scaled.add_integer(&-&p);
        let gap = if gap.signum() == Ordering::Less {
            -gap
        } else {
            gap
        };
        let error = gap.mul_rational(&BigRational::new(pow(&q, query.kind - 1), q.clone()));
        let better = match &best {
            None => true,
            Some(b) => error.cmp_exact(b)? == Ordering::Less,
        };
        if better {
            let is_zero = error.is_zero();
            members.push(Member {
                fraction: FractionRecord {
                    origin: Origin::Direct,
                    p,
                    q,
                },
                weighted_error: RealValue::Exact(error.clone()),
                witness: Witness::Definition,
            });
            best = Some(error);
            if is_zero {
                // nothing beats an exact hit
                break;
            }
        }
    }
    locate_origins(query, &mut members);
    Ok(ClassificationResult {
        kind: query.kind,
        side: query.side,
        q_max: query.q_max,
        members,
        finiteness: Finiteness::UnknownBeyond(query.q_max),
        exhaustive: true,
        diagnostics: Vec::new(),
    })
}

/// Labels each member as a convergent or intermediate fraction when it is one.
fn locate_origins(query: &Query, members: &mut [Member]) {
    let q_max = BigInt::from(query.q_max);
    let mut rows = Vec::new();
    for row in ConvergentIter::new(query.alpha) {
        let Ok(row) = row else { break };
        let stop = row.q > q_max;
        rows.push(row);
        if stop {
            break;
        }
    }
    for m in members.iter_mut() {
        let f = &mut m.fraction;
        if let Some(row) = rows.iter().skip(1).find(|r| r.p == f.p && r.q == f.q) {
            f.origin = Origin::Convergent(row.n as usize);
            continue;
        }
        // q = q_n r + q_{n-1} with 0 < r
        for w in rows.windows(2) {
            let (prev, cur) = (&w[0], &w[1]);
            if cur.q.is_zero() || f.q <= prev.q {
                continue;
            }
            let (r, rem) = (&f.q - &prev.q).div_rem(&cur.q);
            if rem.is_zero() && &cur.p * &r + &prev.p == f.p {
                if let Ok(r) = u64::try_from(&r) {
                    f.origin = Origin::Semiconvergent {
                        n: cur.n as usize,
                        r,
                    };
                    break;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::{cf_expand, AlphaSource, TermStream};
    use num_traits::ToPrimitive;

    fn fracs(res: &ClassificationResult) -> Vec<(i64, i64)> {
        res.fractions()
            .iter()
            .map(|(p, q)| (p.to_i64().unwrap(), q.to_i64().unwrap()))
            .collect()
    }

    #[test]
    fn examples() {
        let pi = cf_expand(AlphaSource::cf([3, 7, 15, 1, 292, 1], Vec::<i64>::new())).unwrap();
        let res = brute_force_oracle(&Query::new(&pi, 1, Side::Upper, 7).unwrap()).unwrap();
        assert_eq!(
            fracs(&res),
            [(4, 1), (7, 2), (10, 3), (13, 4), (16, 5), (19, 6), (22, 7)]
        );
        assert_eq!(res.members[6].fraction.origin, Origin::Convergent(1));
        assert_eq!(
            res.members[2].fraction.origin,
            Origin::Semiconvergent { n: 0, r: 3 }
        );
        let root5 = cf_expand(AlphaSource::Surd(QuadraticSurd::sqrt(5).unwrap())).unwrap();
        let res = brute_force_oracle(&Query::new(&root5, 2, Side::Lower, 5).unwrap()).unwrap();
        assert_eq!(fracs(&res), [(2, 1), (11, 5)]);
        let r = cf_expand(AlphaSource::rational(7, 2)).unwrap();
        for kind in 1..=4 {
            let res = brute_force_oracle(&Query::new(&r, kind, Side::Lower, 2).unwrap()).unwrap();
            assert_eq!(fracs(&res), [(3, 1), (7, 2)]);
        }
    }

    #[test]
    fn streams_are_rejected() {
        let cf = cf_expand(AlphaSource::TermStream(TermStream::new(
            1,
            std::iter::repeat(BigInt::one()),
        )))
        .unwrap();
        let q = Query::new(&cf, 1, Side::Lower, 10).unwrap();
        assert_eq!(
            brute_force_oracle(&q).unwrap_err(),
            Error::ExactnessRequired
        );
    }
}
