//! The textual `α` grammar:
//!
//! ```text
//! rat:<p>/<q>                       rat:-7/3, rat:5
//! surd:(<p>+<q>*sqrt(<d>))/<r>      surd:(0+1*sqrt(5))/1, surd:(1-sqrt(2))
//! cf:[a0;a1,...]                    cf:[3;7,15,1,292,1]
//! cf:[a0;a1,...,(b1,...,bh)]        cf:[0;2,(4)], also cf:[0;2](4)
//! dec:<decimal>~<places>            dec:3.14159265358979~14
//! ```
//!
//! A `dec:` value is known to lie within `10^-places` of the decimal, and
//! only the continued-fraction terms fixed by that interval are produced.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use onesided::cf::{AlphaSource, TermStream};
use onesided::numeric::QuadraticSurd;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Character offset into the spec.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.position + 1, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A parsed specification. Keeps the pieces so that a fresh
/// [`AlphaSource`] (streams are single-use) can be built on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphaSpec {
    Rational(BigRational),
    Surd(QuadraticSurd),
    Cf {
        prefix: Vec<BigInt>,
        period: Vec<BigInt>,
    },
    Decimal {
        lo: BigRational,
        hi: BigRational,
    },
}

impl AlphaSpec {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut c = Cursor::new(text);
        let scheme = c.word();
        c.expect(':')?;
        let spec = match scheme.as_str() {
            "rat" => c.rational()?,
            "surd" => c.surd()?,
            "cf" => c.cf()?,
            "dec" => c.decimal()?,
            _ => {
                return Err(ParseError {
                    position: 0,
                    message: format!("unknown scheme {scheme:?}; expected rat, surd, cf or dec"),
                })
            }
        };
        c.skip_ws();
        if !c.at_end() {
            return Err(c.error("unexpected trailing input"));
        }
        Ok(spec)
    }

    pub fn source(&self) -> AlphaSource {
        match self {
            AlphaSpec::Rational(r) => AlphaSource::Rational(r.clone()),
            AlphaSpec::Surd(s) => AlphaSource::Surd(s.clone()),
            AlphaSpec::Cf { prefix, period } => AlphaSource::ExplicitCf {
                prefix: prefix.clone(),
                period: period.clone(),
            },
            AlphaSpec::Decimal { lo, hi } => {
                let a0 = lo.floor().to_integer();
                let rest = IntervalTerms {
                    lo: lo - BigRational::from_integer(a0.clone()),
                    hi: hi - BigRational::from_integer(a0.clone()),
                };
                AlphaSource::TermStream(TermStream::new(a0, rest))
            }
        }
    }
}

/// Terms after `a0` of every real in `a0 + [lo, hi]`, for as long as they agree.
struct IntervalTerms {
    lo: BigRational,
    hi: BigRational,
}

impl Iterator for IntervalTerms {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        if self.lo.is_zero() {
            return None;
        }
        let lo = self.hi.recip();
        let hi = self.lo.recip();
        let a = lo.floor().to_integer();
        if hi.floor().to_integer() != a {
            return None;
        }
        let shift = BigRational::from_integer(a.clone());
        self.lo = lo - &shift;
        self.hi = hi - shift;
        Some(a)
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, ch: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<(), ParseError> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{ch}'")))
        }
    }

    fn expect_word(&mut self, word: &str) -> Result<(), ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.word() == word {
            Ok(())
        } else {
            self.pos = start;
            Err(self.error(format!("expected '{word}'")))
        }
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let negative = if self.peek() == Some('-') || self.peek() == Some('+') {
            self.pos += 1;
            self.chars[self.pos - 1] == '-'
        } else {
            false
        };
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected an integer"));
        }
        let n: BigInt = digits.parse().expect("ascii digits");
        Ok(if negative { -n } else { n })
    }

    fn rational(&mut self) -> Result<AlphaSpec, ParseError> {
        let p = self.integer()?;
        let q = if self.eat('/') {
            let at = self.pos;
            let q = self.integer()?;
            if q.is_zero() {
                return Err(ParseError {
                    position: at,
                    message: "zero denominator".into(),
                });
            }
            q
        } else {
            BigInt::one()
        };
        Ok(AlphaSpec::Rational(BigRational::new(p, q)))
    }

    fn surd(&mut self) -> Result<AlphaSpec, ParseError> {
        self.expect('(')?;
        let p = self.integer()?;
        self.skip_ws();
        let negative = match self.peek() {
            Some('+') => false,
            Some('-') => true,
            _ => return Err(self.error("expected '+' or '-'")),
        };
        self.pos += 1;
        self.skip_ws();
        let q = if self.peek() == Some('s') {
            BigInt::one()
        } else {
            let q = self.integer()?;
            self.expect('*')?;
            q
        };
        let q = if negative { -q } else { q };
        self.expect_word("sqrt")?;
        self.expect('(')?;
        let at = self.pos;
        let d = self.integer()?;
        if d.is_negative() {
            return Err(ParseError {
                position: at,
                message: "negative radicand".into(),
            });
        }
        self.expect(')')?;
        self.expect(')')?;
        let r = if self.eat('/') {
            let at = self.pos;
            let r = self.integer()?;
            if r.is_zero() {
                return Err(ParseError {
                    position: at,
                    message: "zero denominator".into(),
                });
            }
            r
        } else {
            BigInt::one()
        };
        let s = QuadraticSurd::new(p, q, d, r).map_err(|e| self.error(e.to_string()))?;
        Ok(AlphaSpec::Surd(s))
    }

    fn cf(&mut self) -> Result<AlphaSpec, ParseError> {
        self.expect('[')?;
        let mut prefix = vec![self.integer()?];
        let mut period = Vec::new();
        if self.eat(';') {
            loop {
                self.skip_ws();
                if self.peek() == Some('(') {
                    period = self.period_group()?;
                    break;
                }
                let at = self.pos;
                let a = self.integer()?;
                if !a.is_positive() {
                    return Err(ParseError {
                        position: at,
                        message: "terms after a0 must be positive".into(),
                    });
                }
                prefix.push(a);
                if !self.eat(',') {
                    break;
                }
            }
        }
        self.expect(']')?;
        self.skip_ws();
        if self.peek() == Some('(') {
            if !period.is_empty() {
                return Err(self.error("period given twice"));
            }
            period = self.period_group()?;
        }
        Ok(AlphaSpec::Cf { prefix, period })
    }

    fn period_group(&mut self) -> Result<Vec<BigInt>, ParseError> {
        self.expect('(')?;
        let mut terms = Vec::new();
        loop {
            let at = self.pos;
            let a = self.integer()?;
            if !a.is_positive() {
                return Err(ParseError {
                    position: at,
                    message: "period terms must be positive".into(),
                });
            }
            terms.push(a);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(')')?;
        Ok(terms)
    }

    fn decimal(&mut self) -> Result<AlphaSpec, ParseError> {
        let value = self.decimal_number()?;
        let tilde = self.pos;
        self.expect('~')?;
        self.skip_ws();
        let digits = self.digits();
        let places: u32 = digits
            .parse()
            .map_err(|_| self.error("expected the number of guaranteed places"))?;
        let eps = BigRational::new(BigInt::one(), BigInt::from(10).pow(places));
        let (lo, hi) = (&value - &eps, &value + &eps);
        if lo.floor() != hi.floor() {
            return Err(ParseError {
                position: tilde,
                message: "the guaranteed places do not fix the integer part".into(),
            });
        }
        Ok(AlphaSpec::Decimal { lo, hi })
    }

    fn decimal_number(&mut self) -> Result<BigRational, ParseError> {
        self.skip_ws();
        let negative = match self.peek() {
            Some(sign @ ('-' | '+')) => {
                self.pos += 1;
                sign == '-'
            }
            _ => false,
        };
        let whole = self.digits();
        if whole.is_empty() {
            return Err(self.error("expected a decimal number"));
        }
        let mut value = BigRational::from_integer(whole.parse().expect("ascii digits"));
        if self.peek() == Some('.') {
            self.pos += 1;
            let frac = self.digits();
            if frac.is_empty() {
                return Err(self.error("expected digits after '.'"));
            }
            let scale = BigInt::from(10).pow(frac.len() as u32);
            value += BigRational::new(frac.parse().expect("ascii digits"), scale);
        }
        Ok(if negative { -value } else { value })
    }
}

/// Exact value of a plain decimal such as `2.9608` or `-0.5`, or of `p/q`.
pub fn parse_exact_decimal(text: &str) -> Result<BigRational, ParseError> {
    let mut c = Cursor::new(text);
    let value = c.decimal_number()?;
    let value = if c.eat('/') {
        let at = c.pos;
        let den = c.integer()?;
        if den.is_zero() {
            return Err(ParseError {
                position: at,
                message: "zero denominator".into(),
            });
        }
        value / BigRational::from_integer(den)
    } else {
        value
    };
    c.skip_ws();
    if !c.at_end() {
        return Err(c.error("unexpected trailing input"));
    }
    Ok(value)
}
