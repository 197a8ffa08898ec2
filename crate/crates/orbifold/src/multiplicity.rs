//! Exact multiplicities in Q>=1 together with +infinity.
//!
//! Conventions: coefficient(m) = 1 - 1/m with 1/inf := 0; divisibility is
//! defined on integral-or-infinite values only, where every positive integer
//! divides inf and inf divides only itself; gcd treats inf as an absorbing
//! identity and lcm(inf, x) = inf.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};

/// A multiplicity in Q>=1 or +infinity. Finite values are kept in lowest
/// terms (automatic with `BigRational`) and are always >= 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtMult {
    Finite(BigRational),
    Infinity,
}

impl ExtMult {
    /// The trivial multiplicity 1.
    pub fn one() -> Self {
        ExtMult::Finite(BigRational::one())
    }

    /// A positive integer multiplicity.
    pub fn integer(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::MultiplicityBelowOne("0".into()));
        }
        Ok(ExtMult::Finite(BigRational::from_integer(BigInt::from(n))))
    }

    /// A finite rational multiplicity; must be >= 1.
    pub fn finite(value: BigRational) -> Result<Self> {
        if value < BigRational::one() {
            return Err(Error::MultiplicityBelowOne(value.to_string()));
        }
        Ok(ExtMult::Finite(value))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtMult::Infinity)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, ExtMult::Finite(r) if r.is_one())
    }

    /// True when the value is a positive integer or infinity (the setting in
    /// which divisibility makes sense).
    pub fn is_integral(&self) -> bool {
        match self {
            ExtMult::Finite(r) => r.is_integer(),
            ExtMult::Infinity => true,
        }
    }

    /// The integer value, when finite and integral.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            ExtMult::Finite(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    /// The coefficient 1 - 1/m, in [0, 1]; 1 exactly for infinity, 0 exactly
    /// for the trivial multiplicity.
    pub fn coefficient(&self) -> BigRational {
        match self {
            ExtMult::Finite(r) => BigRational::one() - r.recip(),
            ExtMult::Infinity => BigRational::one(),
        }
    }

    /// Whether `self` divides `other`. Both values must be integral or
    /// infinite; every positive integer divides inf, inf divides only inf.
    pub fn divides(&self, other: &ExtMult) -> Result<bool> {
        let a = require_integral(self)?;
        let b = require_integral(other)?;
        Ok(match (a, b) {
            (None, None) => true,
            (None, Some(_)) => false,
            (Some(_), None) => true,
            (Some(a), Some(b)) => b.is_multiple_of(&a),
        })
    }

    /// The product t * m as an extended rational, for t > 0.
    pub fn scaled(&self, t: &BigRational) -> ExtRational {
        debug_assert!(t.is_positive(), "pullback coefficients are positive");
        match self {
            ExtMult::Finite(r) => ExtRational::Finite(r * t),
            ExtMult::Infinity => ExtRational::Infinity,
        }
    }
}

impl Ord for ExtMult {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtMult::Infinity, ExtMult::Infinity) => Ordering::Equal,
            (ExtMult::Infinity, ExtMult::Finite(_)) => Ordering::Greater,
            (ExtMult::Finite(_), ExtMult::Infinity) => Ordering::Less,
            (ExtMult::Finite(a), ExtMult::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for ExtMult {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtMult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtMult::Finite(r) => write!(f, "{}", r),
            ExtMult::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for ExtMult {
    type Err = Error;

    /// Strict textual form: "inf", "p", or "p/q" with decimal digits only.
    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            return Ok(ExtMult::Infinity);
        }
        let parse_err = || Error::ParseMultiplicity(s.to_string());
        let (numer, denom) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let digits = |part: &str| {
            !part.is_empty() && part.bytes().all(|b| b.is_ascii_digit())
        };
        if !digits(numer) || !denom.is_none_or(digits) {
            return Err(parse_err());
        }
        let n: BigInt = numer.parse().map_err(|_| parse_err())?;
        let d: BigInt = match denom {
            Some(d) => d.parse().map_err(|_| parse_err())?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(parse_err());
        }
        ExtMult::finite(BigRational::new(n, d))
    }
}

fn require_integral(m: &ExtMult) -> Result<Option<BigInt>> {
    match m {
        ExtMult::Infinity => Ok(None),
        ExtMult::Finite(r) if r.is_integer() => Ok(Some(r.to_integer())),
        ExtMult::Finite(r) => Err(Error::NonIntegralMultiplicity(r.to_string())),
    }
}

/// The gcd of integral-or-infinite multiplicities: the largest value (for
/// divisibility) dividing every input. Infinity is the absorbing identity.
pub fn ext_gcd<'a, I>(values: I) -> Result<ExtMult>
where
    I: IntoIterator<Item = &'a ExtMult>,
{
    let mut acc: Option<Option<BigInt>> = None;
    for v in values {
        let v = require_integral(v)?;
        acc = Some(match (acc, v) {
            (None, v) => v,
            (Some(None), v) => v,
            (Some(a), None) => a,
            (Some(Some(a)), Some(b)) => Some(a.gcd(&b)),
        });
    }
    match acc.ok_or(Error::EmptyInput("ext_gcd"))? {
        Some(g) => Ok(ExtMult::Finite(BigRational::from_integer(g))),
        None => Ok(ExtMult::Infinity),
    }
}

/// The lcm of integral-or-infinite multiplicities: the smallest value (for
/// divisibility) every input divides. Infinity absorbs.
pub fn ext_lcm<'a, I>(values: I) -> Result<ExtMult>
where
    I: IntoIterator<Item = &'a ExtMult>,
{
    let mut acc: Option<Option<BigInt>> = None;
    for v in values {
        let v = require_integral(v)?;
        acc = Some(match (acc, v) {
            (None, v) => v,
            (Some(None), _) | (Some(_), None) => None,
            (Some(Some(a)), Some(b)) => Some(a.lcm(&b)),
        });
    }
    match acc.ok_or(Error::EmptyInput("ext_lcm"))? {
        Some(l) => Ok(ExtMult::Finite(BigRational::from_integer(l))),
        None => Ok(ExtMult::Infinity),
    }
}

/// An intermediate value in Q>=0 or +infinity, produced by scaling
/// multiplicities with pullback coefficients before comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtRational {
    Finite(BigRational),
    Infinity,
}

impl ExtRational {
    pub fn is_integral(&self) -> bool {
        match self {
            ExtRational::Finite(r) => r.is_integer(),
            ExtRational::Infinity => true,
        }
    }

    /// Convert to a multiplicity, clamping finite values below 1 up to 1.
    pub fn clamped_mult(&self) -> ExtMult {
        match self {
            ExtRational::Infinity => ExtMult::Infinity,
            ExtRational::Finite(r) if *r <= BigRational::one() => ExtMult::one(),
            ExtRational::Finite(r) => ExtMult::Finite(r.clone()),
        }
    }

    /// Convert to a multiplicity via the ceiling, clamped below at 1.
    pub fn ceil_clamped_mult(&self) -> ExtMult {
        match self {
            ExtRational::Infinity => ExtMult::Infinity,
            ExtRational::Finite(r) => {
                let c = r.ceil();
                if c <= BigRational::one() {
                    ExtMult::one()
                } else {
                    ExtMult::Finite(c)
                }
            }
        }
    }

    /// Convert to a multiplicity; errors on finite values below 1.
    pub fn into_mult(self) -> Result<ExtMult> {
        match self {
            ExtRational::Infinity => Ok(ExtMult::Infinity),
            ExtRational::Finite(r) => ExtMult::finite(r),
        }
    }
}

impl From<ExtMult> for ExtRational {
    fn from(m: ExtMult) -> Self {
        match m {
            ExtMult::Finite(r) => ExtRational::Finite(r),
            ExtMult::Infinity => ExtRational::Infinity,
        }
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Infinity, ExtRational::Infinity) => Ordering::Equal,
            (ExtRational::Infinity, ExtRational::Finite(_)) => Ordering::Greater,
            (ExtRational::Finite(_), ExtRational::Infinity) => Ordering::Less,
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(r) => write!(f, "{}", r),
            ExtRational::Infinity => write!(f, "inf"),
        }
    }
}
