use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::quadratic::{finiteness_kind_ge4, quadratic_kind3_verdict};
use super::{ClassificationResult, Finiteness, Member, Query, Side, Witness};
use crate::cf::{
    abs_distance, p_quantity, CfExpansion, ConvergentIter, ConvergentRow, FractionRecord, Origin,
    Periodicity, RealValue,
};
use crate::error::{Error, Result};
use crate::numeric::{pow, BigRational, QuadraticSurd};

/// Why a scan ended.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Stop {
    /// The finite expansion ran out (α itself was handled).
    Exhausted,
    QCap,
    NCap,
    /// Denominators have outgrown the best weighted error for good.
    Growth,
    Undecided(usize),
    StreamDry(usize),
}

struct Scan {
    members: Vec<Member>,
    stop: Stop,
}

pub(crate) fn weighted_error(
    cf: &CfExpansion,
    p: &BigInt,
    q: &BigInt,
    kind: u32,
) -> Result<RealValue> {
    let d = abs_distance(cf, p, q)?;
    Ok(d.mul_rational(&BigRational::from_integer(pow(q, kind - 1))))
}

pub(crate) fn ceil_alpha(cf: &CfExpansion) -> Result<BigInt> {
    let a0 = cf.term_required(0)?;
    Ok(if cf.last_index() == Some(0) {
        a0
    } else {
        a0 + 1
    })
}

fn exact_hit(row: &ConvergentRow) -> Member {
    Member {
        fraction: FractionRecord {
            p: row.p.clone(),
            q: row.q.clone(),
            origin: Origin::Convergent(row.n as usize),
        },
        weighted_error: RealValue::Exact(QuadraticSurd::zero()),
        witness: Witness::ExactHit,
    }
}

fn stream_stop(e: Error, n: usize) -> Result<Stop> {
    match e {
        Error::InsufficientTerms(_) => Ok(Stop::StreamDry(n)),
        e => Err(e),
    }
}

/// Intermediate fractions `(p_n r + p_{n-1}) / (q_n r + q_{n-1})`,
/// `0 <= r < a_{n+1}`, over odd `n` (lower) or even `n` without `(0, 0)`
/// (upper). A finite expansion behaves as if `a_{N+1} = 1` and contributes
/// `α` itself on both sides.
fn intermediate_scan(cf: &CfExpansion, kind: u32, side: Side, q_cap: &BigInt) -> Result<Scan> {
    let want_odd = side == Side::Lower;
    let last = cf.last_index();
    let mut members = Vec::new();
    let mut prev: Option<ConvergentRow> = None;
    for row in ConvergentIter::new(cf) {
        let row = match row {
            Ok(row) => row,
            Err(e) => {
                let n = prev.as_ref().map_or(0, |r| (r.n + 1) as usize);
                return Ok(Scan {
                    members,
                    stop: stream_stop(e, n)?,
                });
            }
        };
        let Some(before) = prev.replace(row.clone()) else {
            continue;
        };
        if &before.q > q_cap {
            return Ok(Scan {
                members,
                stop: Stop::QCap,
            });
        }
        let n = row.n as usize;
        if (n % 2 == 1) == want_odd {
            let next_term = if last == Some(n) {
                BigInt::one()
            } else {
                match cf.term(n + 1) {
                    Ok(Some(a)) => a,
                    Ok(None) => unreachable!("only the last index has no successor"),
                    Err(e) => {
                        return Ok(Scan {
                            members,
                            stop: stream_stop(e, n + 1)?,
                        })
                    }
                }
            };
            // r with q_n r + q_{n-1} <= q_cap
            let room = (q_cap - &before.q) / &row.q + 1;
            let r_end = next_term.min(room).to_u64().ok_or_else(|| {
                Error::InvalidArgument("too many intermediate fractions to list".into())
            })?;
            let r_start = u64::from(n == 0);
            for r in r_start..r_end {
                let p = &row.p * r + &before.p;
                let q = &row.q * r + &before.q;
                let origin = if r == 0 {
                    Origin::Convergent(n - 1)
                } else {
                    Origin::Semiconvergent { n, r }
                };
                let weighted_error = weighted_error(cf, &p, &q, kind)?;
                members.push(Member {
                    fraction: FractionRecord { p, q, origin },
                    weighted_error,
                    witness: Witness::Intermediate { n, r },
                });
            }
        }
        if last == Some(n) {
            if &row.q <= q_cap {
                members.push(exact_hit(&row));
            }
            return Ok(Scan {
                members,
                stop: Stop::Exhausted,
            });
        }
    }
    unreachable!("finite expansions end at their last index, streams end with an error")
}

/// Member count of the intermediate-fraction sets of a rational `α`.
fn intermediate_count(cf: &CfExpansion, side: Side) -> Result<BigInt> {
    let last = cf.last_index().expect("finite expansion");
    let mut count = BigInt::one();
    let parity = usize::from(side == Side::Lower);
    for n in (0..last).filter(|n| n % 2 == parity) {
        count += cf.term_required(n + 1)?;
    }
    if last % 2 == parity && last > 0 {
        count += 1;
    }
    if side == Side::Upper && last > 0 {
        count -= 1;
    }
    Ok(count)
}

/// Candidates `⌈α⌉/1` (upper only) and the convergents of one parity, kept
/// when their weighted error `C_n(ℓ) = q_n^(ℓ-3) / P(n)` is strictly below
/// every earlier candidate's.
fn running_minimum(
    cf: &CfExpansion,
    kind: u32,
    side: Side,
    q_cap: Option<&BigInt>,
    n_cap: Option<usize>,
) -> Result<Scan> {
    debug_assert!(kind >= 3);
    let mut members = Vec::new();
    let last = cf.last_index();
    let want_odd = side == Side::Upper;
    let mut best: Option<RealValue> = None;
    let mut next_n = 0;

    if side == Side::Upper {
        let ceil = ceil_alpha(cf)?;
        if last == Some(0) {
            let row = ConvergentRow {
                n: 0,
                p: ceil,
                q: BigInt::one(),
            };
            members.push(exact_hit(&row));
            return Ok(Scan {
                members,
                stop: Stop::Exhausted,
            });
        }
        let e = weighted_error(cf, &ceil, &BigInt::one(), kind)?;
        members.push(Member {
            fraction: FractionRecord {
                p: ceil,
                q: BigInt::one(),
                origin: Origin::CeilUnit,
            },
            weighted_error: e.clone(),
            witness: Witness::CeilUnit,
        });
        best = Some(e);
    }

    // P(n) < B + 2 for terms bounded by B, so once q_n^(ℓ-3)/(B+2) reaches
    // the best error no later convergent can win (a finite expansion still
    // has its exact hit to come)
    let growth_divisor = match (kind >= 4 && last.is_none(), cf.term_bound()) {
        (true, Some(b)) => Some(BigRational::from_integer(b + 2)),
        _ => None,
    };

    for row in ConvergentIter::new(cf).skip(1) {
        let row = match row {
            Ok(row) => row,
            Err(e) => {
                return Ok(Scan {
                    members,
                    stop: stream_stop(e, next_n)?,
                })
            }
        };
        let n = row.n as usize;
        next_n = n + 1;
        if q_cap.is_some_and(|cap| &row.q > cap) {
            return Ok(Scan {
                members,
                stop: Stop::QCap,
            });
        }
        if n_cap.is_some_and(|cap| n > cap) {
            return Ok(Scan {
                members,
                stop: Stop::NCap,
            });
        }
        if last == Some(n) {
            members.push(exact_hit(&row));
            return Ok(Scan {
                members,
                stop: Stop::Exhausted,
            });
        }
        if (n % 2 == 1) != want_odd {
            continue;
        }
        if side == Side::Upper && n == 1 && row.q.is_one() {
            // p_1/q_1 is ⌈α⌉/1, already listed
            continue;
        }
        let p_n = match p_quantity(cf, n) {
            Ok(v) => v,
            Err(e) => {
                return Ok(Scan {
                    members,
                    stop: stream_stop(e, n)?,
                })
            }
        };
        let c_n = p_n
            .recip()?
            .mul_rational(&BigRational::from_integer(pow(&row.q, kind - 3)));
        let accept = match &best {
            None => true,
            Some(b) => match c_n.try_cmp(b)? {
                Some(Ordering::Less) => true,
                Some(_) => false,
                None => {
                    return Ok(Scan {
                        members,
                        stop: Stop::Undecided(n),
                    })
                }
            },
        };
        if accept {
            members.push(Member {
                fraction: FractionRecord {
                    p: row.p.clone(),
                    q: row.q.clone(),
                    origin: Origin::Convergent(n),
                },
                weighted_error: c_n.clone(),
                witness: Witness::RunningMinimum { n },
            });
            best = Some(c_n);
        }
        if let (Some(div), Some(b)) = (&growth_divisor, &best) {
            let floor = BigRational::from_integer(pow(&row.q, kind - 3)) / div;
            if matches!(
                b.try_cmp_rational(&floor),
                Some(Ordering::Less | Ordering::Equal)
            ) {
                return Ok(Scan {
                    members,
                    stop: Stop::Growth,
                });
            }
        }
    }
    unreachable!("finite expansions end at their last index, streams end with an error")
}

fn note_stop(stop: &Stop, diagnostics: &mut Vec<String>) -> bool {
    match stop {
        Stop::Undecided(n) => {
            diagnostics.push(format!(
                "comparison at convergent {n} undecided within the term budget"
            ));
            true
        }
        Stop::StreamDry(n) => {
            diagnostics.push(format!("term stream exhausted near index {n}"));
            true
        }
        _ => false,
    }
}

fn finish(
    query: &Query,
    scan: Scan,
    finiteness: Finiteness,
    mut diagnostics: Vec<String>,
) -> ClassificationResult {
    let cut_short = note_stop(&scan.stop, &mut diagnostics);
    let finiteness = if cut_short {
        Finiteness::UnknownBeyond(query.q_max)
    } else {
        finiteness
    };
    if query.alpha.was_normalized() {
        diagnostics.push("trailing term 1 folded into its predecessor".into());
    }
    ClassificationResult {
        kind: query.kind,
        side: query.side,
        q_max: query.q_max,
        members: scan.members,
        finiteness,
        exhaustive: !cut_short,
        diagnostics,
    }
}

/// Kinds 1 and 2, which share one member set.
pub fn enumerate_kind_1_2(query: &Query) -> Result<ClassificationResult> {
    if !(1..=2).contains(&query.kind) {
        return Err(Error::InvalidArgument(format!(
            "kind {} given to the kind 1/2 enumerator",
            query.kind
        )));
    }
    let cf = query.alpha;
    let scan = intermediate_scan(cf, query.kind, query.side, &BigInt::from(query.q_max))?;
    let finiteness = match cf.periodicity() {
        Periodicity::Finite { .. } => Finiteness::ProvenFinite {
            count: Some(intermediate_count(cf, query.side)?),
        },
        Periodicity::Periodic { .. } => Finiteness::ProvenInfinite,
        Periodicity::Unknown => Finiteness::UnknownBeyond(query.q_max),
    };
    Ok(finish(query, scan, finiteness, Vec::new()))
}

/// Kind 3: even convergents with `P(n) > P(k)` for every smaller even `k`
/// (lower), or `⌈α⌉/1` plus the odd analogue (upper).
pub fn enumerate_kind_3(query: &Query) -> Result<ClassificationResult> {
    if query.kind != 3 {
        return Err(Error::InvalidArgument(format!(
            "kind {} given to the kind 3 enumerator",
            query.kind
        )));
    }
    let cf = query.alpha;
    let scan = running_minimum(cf, 3, query.side, Some(&BigInt::from(query.q_max)), None)?;
    let mut diagnostics = Vec::new();
    let finiteness = match cf.periodicity() {
        Periodicity::Finite { .. } => {
            let all = running_minimum(cf, 3, query.side, None, None)?;
            Finiteness::ProvenFinite {
                count: Some(BigInt::from(all.members.len())),
            }
        }
        Periodicity::Periodic { preperiod, period } => {
            let verdict = quadratic_kind3_verdict(cf)?;
            diagnostics.push(verdict.to_string());
            if verdict.finite_side == query.side {
                let all = running_minimum(cf, 3, query.side, None, Some(preperiod + 2 * period))?;
                Finiteness::ProvenFinite {
                    count: Some(BigInt::from(all.members.len())),
                }
            } else {
                Finiteness::ProvenInfinite
            }
        }
        Periodicity::Unknown => Finiteness::UnknownBeyond(query.q_max),
    };
    Ok(finish(query, scan, finiteness, diagnostics))
}

/// Kinds ℓ >= 4: convergents of one parity whose `C_n(ℓ)` is strictly below
/// every earlier candidate's, with `⌈α⌉/1` leading the upper side.
pub fn enumerate_kind_ge4(query: &Query) -> Result<ClassificationResult> {
    if query.kind < 4 {
        return Err(Error::InvalidArgument(format!(
            "kind {} given to the kind >= 4 enumerator",
            query.kind
        )));
    }
    let cf = query.alpha;
    let scan = running_minimum(
        cf,
        query.kind,
        query.side,
        Some(&BigInt::from(query.q_max)),
        None,
    )?;
    let finiteness = if cf.is_stream() {
        match finiteness_kind_ge4(cf, query.kind, query.side) {
            Finiteness::Unknown => Finiteness::UnknownBeyond(query.q_max),
            f => f,
        }
    } else {
        let all = running_minimum(cf, query.kind, query.side, None, None)?;
        debug_assert!(matches!(all.stop, Stop::Exhausted | Stop::Growth));
        Finiteness::ProvenFinite {
            count: Some(BigInt::from(all.members.len())),
        }
    };
    Ok(finish(query, scan, finiteness, Vec::new()))
}
