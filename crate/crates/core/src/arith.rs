//! Exact scalar arithmetic: dyadic rationals (the carrier of every algebra
//! value) and arbitrary-precision rationals (the arithmetic of the decision
//! kernel). No floating point anywhere.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, reduced with positive denominator.
pub type Rational = num_rational::BigRational;

/// A dyadic rational `mantissa / 2^exponent` in canonical form: either the
/// exponent is zero or the mantissa is odd.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: u32,
}

impl Dyadic {
    /// Builds `mantissa / 2^exponent`, canonicalizing the representation.
    pub fn new(mantissa: impl Into<BigInt>, exponent: u32) -> Self {
        let mut m: BigInt = mantissa.into();
        let mut e = exponent;
        if m.is_zero() {
            return Dyadic { mantissa: m, exponent: 0 };
        }
        while e > 0 && m.is_even() {
            m /= 2;
            e -= 1;
        }
        Dyadic { mantissa: m, exponent: e }
    }

    pub fn zero() -> Self {
        Dyadic { mantissa: BigInt::zero(), exponent: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mantissa: BigInt::one(), exponent: 0 }
    }

    /// 1/2.
    pub fn half() -> Self {
        Dyadic { mantissa: BigInt::one(), exponent: 1 }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic { mantissa: n.into(), exponent: 0 }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    /// Exact halving; the exponent grows by at most one.
    pub fn halve(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic::new(self.mantissa.clone(), self.exponent + 1)
    }

    /// Exact doubling, the inverse of [`halve`](Self::halve).
    pub fn double(&self) -> Self {
        Dyadic::new(&self.mantissa * 2, self.exponent)
    }

    pub fn abs(&self) -> Self {
        Dyadic { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Total conversion into a full rational.
    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mantissa.clone(), BigInt::one() << self.exponent as usize)
    }

    /// Partial inverse of [`to_rational`](Self::to_rational): succeeds exactly
    /// when the reduced denominator is a power of two.
    pub fn from_rational(r: &Rational) -> Option<Self> {
        let denom = r.denom();
        // Reduced positive denominator is a power of two iff it has exactly
        // one set bit.
        if denom.sign() != Sign::Plus {
            return None;
        }
        let (_, bytes) = denom.to_bytes_be();
        let ones: u32 = bytes.iter().map(|b| b.count_ones()).sum();
        if ones != 1 {
            return None;
        }
        let e = denom.trailing_zeros().unwrap_or(0) as u32;
        Some(Dyadic::new(r.numer().clone(), e))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exponent.max(rhs.exponent);
        let lm = &self.mantissa << (e - self.exponent) as usize;
        let rm = &rhs.mantissa << (e - rhs.exponent) as usize;
        Dyadic::new(lm + rm, e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        Dyadic { mantissa: -&self.mantissa, exponent: self.exponent }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        Dyadic { mantissa: -self.mantissa, exponent: self.exponent }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        // a/2^p vs b/2^q compares as a*2^q vs b*2^p.
        let lm = &self.mantissa << other.exponent as usize;
        let rm = &other.mantissa << self.exponent as usize;
        lm.cmp(&rm)
    }
}

impl fmt::Display for Dyadic {
    /// Prints `m` when the exponent is zero and `m/2^e` (denominator written
    /// out, e.g. `3/8`) otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.mantissa)
        } else {
            write!(f, "{}/{}", self.mantissa, BigInt::one() << self.exponent as usize)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Error raised when a scalar literal does not parse.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid {kind} literal {text:?}: {reason}")]
pub struct ScalarParseError {
    pub kind: &'static str,
    pub text: String,
    pub reason: String,
}

impl FromStr for Dyadic {
    type Err = ScalarParseError;

    /// Accepts `m`, `m/d` with `d` a positive power of two, and `m/2^e`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = |reason: &str| ScalarParseError {
            kind: "dyadic",
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let (num, den) = match s.split_once('/') {
            None => (s, None),
            Some((n, d)) => (n.trim(), Some(d.trim())),
        };
        let m: BigInt = num.parse().map_err(|_| err("bad mantissa"))?;
        let e = match den {
            None => 0,
            Some(d) => {
                if let Some(exp) = d.strip_prefix("2^") {
                    exp.trim().parse::<u32>().map_err(|_| err("bad exponent"))?
                } else {
                    let d: BigInt = d.parse().map_err(|_| err("bad denominator"))?;
                    if d <= BigInt::zero() {
                        return Err(err("denominator must be positive"));
                    }
                    let (_, bytes) = d.to_bytes_be();
                    let ones: u32 = bytes.iter().map(|b| b.count_ones()).sum();
                    if ones != 1 {
                        return Err(err("denominator must be a power of two"));
                    }
                    d.trailing_zeros().unwrap_or(0) as u32
                }
            }
        };
        Ok(Dyadic::new(m, e))
    }
}

/// A dyadic constrained to the closed unit interval.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitDyadic(Dyadic);

/// Error raised when a value leaves the unit interval.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("value {0} is outside [0, 1]")]
pub struct OutOfUnitInterval(pub String);

impl UnitDyadic {
    pub fn new(d: Dyadic) -> Result<Self, OutOfUnitInterval> {
        if d.is_negative() || d > Dyadic::one() {
            return Err(OutOfUnitInterval(d.to_string()));
        }
        Ok(UnitDyadic(d))
    }

    pub fn zero() -> Self {
        UnitDyadic(Dyadic::zero())
    }

    pub fn one() -> Self {
        UnitDyadic(Dyadic::one())
    }

    pub fn get(&self) -> &Dyadic {
        &self.0
    }

    pub fn into_inner(self) -> Dyadic {
        self.0
    }
}

impl fmt::Display for UnitDyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for UnitDyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for UnitDyadic {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let d: Dyadic = s.parse()?;
        UnitDyadic::new(d.clone()).map_err(|_| ScalarParseError {
            kind: "unit dyadic",
            text: s.to_string(),
            reason: "outside [0, 1]".to_string(),
        })
    }
}

/// Parses a rational literal `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarParseError> {
    let s = s.trim();
    s.parse().map_err(|_| ScalarParseError {
        kind: "rational",
        text: s.to_string(),
        reason: "expected p/q with integer p and positive integer q".to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dy(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn addition_is_exact() {
        assert_eq!(dy("1/2") + dy("1/4"), dy("3/4"));
        assert_eq!(dy("5/8") + dy("7/8"), dy("3/2"));
        let z = dy("3/8") + dy("-3/8");
        assert_eq!(z, Dyadic::zero());
        assert_eq!(z.exponent(), 0);
    }

    #[test]
    fn halving() {
        assert_eq!(dy("3/4").halve(), dy("3/8"));
        assert_eq!(Dyadic::zero().halve(), Dyadic::zero());
        assert_eq!(Dyadic::one().halve(), dy("1/2"));
        // Exponent grows by at most one.
        assert_eq!(dy("3/4").halve().exponent(), 3);
        assert_eq!(dy("6").halve(), dy("3"));
    }

    #[test]
    fn comparison_matches_value() {
        assert!(dy("1/2") < dy("3/4"));
        assert_eq!(dy("5/8").cmp(&dy("5/8")), Ordering::Equal);
        assert!(dy("1") > dy("7/8"));
        assert!(dy("-1/2") < dy("1/4"));
    }

    #[test]
    fn canonical_form_is_stable() {
        let d = Dyadic::new(6, 3); // 6/8 = 3/4
        assert_eq!(d, dy("3/4"));
        assert_eq!(d.exponent(), 2);
        let again = Dyadic::new(d.mantissa().clone(), d.exponent());
        assert_eq!(again, d);
    }

    #[test]
    fn rational_round_trip() {
        let d = dy("-5/16");
        let r = d.to_rational();
        assert_eq!(Dyadic::from_rational(&r), Some(d));
        assert_eq!(Dyadic::from_rational(&parse_rational("1/3").unwrap()), None);
        assert_eq!(Dyadic::from_rational(&parse_rational("4/6").unwrap()), None);
        assert_eq!(
            Dyadic::from_rational(&parse_rational("6/4").unwrap()),
            Some(dy("3/2"))
        );
    }

    #[test]
    fn parses_both_denominator_forms() {
        assert_eq!(dy("3/2^3"), dy("3/8"));
        assert_eq!(dy("-2"), Dyadic::from_int(-2));
        assert!("1/3".parse::<Dyadic>().is_err());
        assert!("1/0".parse::<Dyadic>().is_err());
    }

    #[test]
    fn display_formats() {
        assert_eq!(dy("3/8").to_string(), "3/8");
        assert_eq!(dy("-1/2").to_string(), "-1/2");
        assert_eq!(Dyadic::from_int(7).to_string(), "7");
        assert_eq!(Dyadic::zero().to_string(), "0");
    }

    #[test]
    fn unit_interval_is_enforced() {
        assert!(UnitDyadic::new(dy("9/8")).is_err());
        assert!(UnitDyadic::new(dy("-1/8")).is_err());
        assert!(UnitDyadic::new(dy("1")).is_ok());
        assert!(UnitDyadic::new(dy("0")).is_ok());
    }
}
