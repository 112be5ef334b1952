//! Exact rationals backed by arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// A reduced fraction with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rational(BigRational);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RationalParseError {
    #[error("expected `num/den`, got {0:?}")]
    Syntax(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("fraction {0:?} is not in lowest terms with positive denominator")]
    NotReduced(String),
}

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn midpoint(&self, other: &Rational) -> Rational {
        Rational((&self.0 + &other.0) / BigRational::from_integer(BigInt::from(2)))
    }

    pub fn scale(&self, factor: &Rational) -> Rational {
        Rational(&self.0 * &factor.0)
    }

    /// Parses the strict `num/den` form: lowest terms, positive denominator.
    pub fn parse_fraction(s: &str) -> Result<Self, RationalParseError> {
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| RationalParseError::Syntax(s.to_string()))?;
        let (numer, denom) = parse_parts(s, n, d)?;
        if denom.is_zero() {
            return Err(RationalParseError::ZeroDenominator(s.to_string()));
        }
        if !denom.is_positive() || !numer.gcd(&denom).is_one() {
            return Err(RationalParseError::NotReduced(s.to_string()));
        }
        Ok(Rational::new(numer, denom))
    }

    /// Always prints `num/den`, including `n/1` for integers.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

fn parse_parts(s: &str, n: &str, d: &str) -> Result<(BigInt, BigInt), RationalParseError> {
    let syntax = || RationalParseError::Syntax(s.to_string());
    let digits_ok = |t: &str| {
        let body = t.strip_prefix('-').unwrap_or(t);
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits_ok(n) || !digits_ok(d) {
        return Err(syntax());
    }
    let numer = BigInt::from_str(n).map_err(|_| syntax())?;
    let denom = BigInt::from_str(d).map_err(|_| syntax())?;
    Ok((numer, denom))
}

/// Integers print bare, everything else as `num/den`.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

/// Accepts `n` or reduced `num/den`.
impl FromStr for Rational {
    type Err = RationalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.contains('/') {
            Rational::parse_fraction(s)
        } else {
            let (n, _) = parse_parts(s, s, "1")?;
            Ok(Rational::integer(n))
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}
