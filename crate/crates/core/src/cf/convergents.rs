use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::expansion::CfExpansion;
use crate::error::{Error, Result};
use crate::numeric::BigRational;

/// One row `(n, p_n, q_n)` of a convergent table; `n` starts at `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentRow {
    pub n: i64,
    pub p: BigInt,
    pub q: BigInt,
}

impl ConvergentRow {
    pub fn value(&self) -> BigRational {
        BigRational::new(self.p.clone(), self.q.clone())
    }
}

/// Rows `-1..=n_max` of `p_n/q_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentTable {
    rows: Vec<ConvergentRow>,
}

impl ConvergentTable {
    pub fn rows(&self) -> &[ConvergentRow] {
        &self.rows
    }

    /// Row for index `n >= -1`.
    pub fn get(&self, n: i64) -> Option<&ConvergentRow> {
        usize::try_from(n + 1).ok().and_then(|i| self.rows.get(i))
    }

    /// Largest index present.
    pub fn last_index(&self) -> i64 {
        self.rows.len() as i64 - 2
    }

    /// `q_n p_{n-1} - p_n q_{n-1}` for `n >= 0`.
    pub fn determinant(&self, n: i64) -> Option<BigInt> {
        let cur = self.get(n)?;
        let prev = self.get(n - 1)?;
        Some(&cur.q * &prev.p - &cur.p * &prev.q)
    }
}

/// Convergent table through `n_max`, clamped to the available terms.
///
/// ```
/// use onesided::cf::{cf_expand, convergents, AlphaSource};
/// use onesided::numeric::QuadraticSurd;
///
/// let cf = cf_expand(AlphaSource::Surd(QuadraticSurd::sqrt(5).unwrap())).unwrap();
/// let table = convergents(&cf, 3);
/// let fractions: Vec<String> = table.rows()[1..]
///     .iter()
///     .map(|r| format!("{}/{}", r.p, r.q))
///     .collect();
/// assert_eq!(fractions, ["2/1", "9/4", "38/17", "161/72"]);
/// ```
pub fn convergents(cf: &CfExpansion, n_max: usize) -> ConvergentTable {
    let rows = ConvergentIter::new(cf)
        .take(n_max + 2)
        .map_while(|r| r.ok())
        .collect();
    ConvergentTable { rows }
}

/// Lazily walks `(n, p_n, q_n)` from `n = -1`, ending after the last term of
/// a finite expansion. A stream that runs dry yields its error once.
pub struct ConvergentIter<'a> {
    cf: &'a CfExpansion,
    next: i64,
    prev: (BigInt, BigInt),
    cur: (BigInt, BigInt),
    done: bool,
}

impl<'a> ConvergentIter<'a> {
    pub fn new(cf: &'a CfExpansion) -> Self {
        ConvergentIter {
            cf,
            next: -1,
            prev: (BigInt::zero(), BigInt::one()),
            cur: (BigInt::one(), BigInt::zero()),
            done: false,
        }
    }
}

impl Iterator for ConvergentIter<'_> {
    type Item = Result<ConvergentRow>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let n = self.next;
        if n >= 0 {
            let a = match self.cf.term(n as usize) {
                Ok(Some(a)) => a,
                Ok(None) => {
                    self.done = true;
                    return None;
                }
                Err(e) => {
                    self.done = true;
                    return Some(Err(e));
                }
            };
            let p = &a * &self.cur.0 + &self.prev.0;
            let q = &a * &self.cur.1 + &self.prev.1;
            self.prev = std::mem::replace(&mut self.cur, (p, q));
        }
        self.next += 1;
        Some(Ok(ConvergentRow {
            n,
            p: self.cur.0.clone(),
            q: self.cur.1.clone(),
        }))
    }
}

/// Where a candidate fraction comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    Convergent(usize),
    /// `(p_n r + p_{n-1}) / (q_n r + q_{n-1})`; `r = 0` is the convergent
    /// `p_{n-1}/q_{n-1}` seen from the next level.
    Semiconvergent {
        n: usize,
        r: u64,
    },
    /// `⌈α⌉/1`.
    CeilUnit,
    /// Found by a direct scan and not matched to the convergent table.
    Direct,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Convergent(n) => write!(f, "convergent n={n}"),
            Origin::Semiconvergent { n, r } => write!(f, "semiconvergent n={n} r={r}"),
            Origin::CeilUnit => write!(f, "ceil/1"),
            Origin::Direct => write!(f, "direct"),
        }
    }
}

/// A candidate approximation `p/q` together with its origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionRecord {
    pub p: BigInt,
    pub q: BigInt,
    pub origin: Origin,
}

impl FractionRecord {
    pub fn value(&self) -> BigRational {
        BigRational::new(self.p.clone(), self.q.clone())
    }
}

impl fmt::Display for FractionRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// The intermediate fractions strictly between levels `n-1` and `n+1`,
/// for `r = 1, ..., a_{n+1} - 1`.
///
/// A finite expansion has no term past its end, so the list is empty there.
/// Terms too large to enumerate are rejected.
pub fn semiconvergents(cf: &CfExpansion, n: usize) -> Result<Vec<FractionRecord>> {
    let a = match cf.term(n + 1)? {
        Some(a) => a,
        None => return Ok(Vec::new()),
    };
    let r_max: u64 = u64::try_from(&a).map_err(|_| {
        Error::InvalidArgument(format!("term a_{} = {a} too large to enumerate", n + 1))
    })?;
    let table = convergents(cf, n);
    let cur = table.get(n as i64).ok_or(Error::InsufficientTerms(n))?;
    let prev = table.get(n as i64 - 1).unwrap();
    Ok((1..r_max)
        .map(|r| FractionRecord {
            p: &cur.p * r + &prev.p,
            q: &cur.q * r + &prev.q,
            origin: Origin::Semiconvergent { n, r },
        })
        .collect())
}
