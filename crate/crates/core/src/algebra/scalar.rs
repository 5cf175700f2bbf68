//! The scalar coefficient domain: exact arbitrary-precision rationals with a
//! float escape hatch.
//!
//! Arithmetic between two exact values stays exact; as soon as a float is
//! involved the result is a float. This one union type lets the rest of the
//! crate run the same code over both coefficient domains.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational or binary64 scalar.
#[derive(Debug, Clone)]
pub enum Scalar {
    /// Arbitrary-precision rational, always in lowest terms with positive
    /// denominator (maintained by `BigRational`).
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact rational `num/den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_f64(x: f64) -> Self {
        Scalar::Float(x)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_one(),
            Scalar::Float(x) => *x == 1.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Nearest integer together with the absolute distance to it.
    pub fn nearest_integer(&self) -> (BigInt, f64) {
        match self {
            Scalar::Exact(r) => {
                let n = r.round().to_integer();
                let dist =
                    (r - BigRational::from_integer(n.clone())).abs().to_f64().unwrap_or(f64::NAN);
                (n, dist)
            }
            Scalar::Float(x) => {
                let n = x.round();
                (BigInt::from_f64(n).unwrap_or_else(BigInt::zero), (x - n).abs())
            }
        }
    }

    /// Reinterpret as float, keeping the same numeric value.
    pub fn floatify(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    fn binop(
        &self,
        rhs: &Scalar,
        exact: impl Fn(&BigRational, &BigRational) -> BigRational,
        float: impl Fn(f64, f64) -> f64,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(exact(a, b)),
            _ => Scalar::Float(float(self.to_f64(), rhs.to_f64())),
        }
    }
}

impl PartialEq for Scalar {
    /// Coefficient-wise equality. Two exact values compare as rationals;
    /// any float comparison falls back to numeric f64 equality.
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.partial_cmp(b),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.binop(rhs, |a, b| a $op b, |a, b| a $op b)
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a / b, |a, b| a / b)
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        (&self).div(&rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.to_integer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Parse a rational literal: an integer or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::parse(0, format!("invalid rational literal `{s}`"));
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::parse(0, format!("zero denominator in `{s}`")));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = s.trim().parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_stays_exact() {
        let a = Scalar::ratio(1, 3);
        let b = Scalar::ratio(1, 6);
        let s = &a + &b;
        assert!(s.is_exact());
        assert_eq!(s, Scalar::ratio(1, 2));
    }

    #[test]
    fn float_is_contagious() {
        let a = Scalar::ratio(1, 3);
        let b = Scalar::from_f64(0.5);
        assert!(!(&a + &b).is_exact());
        assert!(!(&b * &a).is_exact());
        assert!((&a * &a).is_exact());
    }

    #[test]
    fn lowest_terms() {
        let r = Scalar::ratio(4, -6);
        match r {
            Scalar::Exact(q) => {
                assert_eq!(q.numer(), &BigInt::from(-2));
                assert_eq!(q.denom(), &BigInt::from(3));
            }
            _ => panic!("expected exact"),
        }
    }

    #[test]
    fn nearest_integer_distances() {
        let (n, d) = Scalar::from_f64(2.9999999998).nearest_integer();
        assert_eq!(n, BigInt::from(3));
        assert!(d < 1e-9);
        let (n, d) = Scalar::ratio(1, 2).nearest_integer();
        assert_eq!(d, 0.5);
        // round() on exact 1/2 may go either way; the distance is what matters
        assert!(n == BigInt::from(0) || n == BigInt::from(1));
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("3").unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(parse_rational("-4/6").unwrap(), BigRational::new((-2).into(), 3.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::ratio(3, 2).to_string(), "3/2");
        assert_eq!(Scalar::from_int(-7).to_string(), "-7");
    }
}
