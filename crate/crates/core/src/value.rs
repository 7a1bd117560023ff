//! Elements of a lexicographically ordered group `Q^h`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A value in `Q^h` ordered lexicographically, most significant coordinate first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Value {
    coords: Vec<BigRational>,
}

impl Value {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyValue);
        }
        Ok(Value { coords })
    }

    /// Rank-1 value from a rational.
    pub fn scalar(q: BigRational) -> Self {
        Value { coords: vec![q] }
    }

    pub fn int(n: i64) -> Self {
        Value::scalar(BigRational::from_integer(n.into()))
    }

    /// Rank-1 value `num/den`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Value::scalar(BigRational::new(num.into(), den.into()))
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        assert!(!coords.is_empty());
        Value {
            coords: coords
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        assert!(rank >= 1);
        Value {
            coords: vec![BigRational::zero(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Strictly positive in the lex order.
    pub fn is_positive(&self) -> bool {
        match self.coords.iter().find(|c| !c.is_zero()) {
            Some(c) => c.is_positive(),
            None => false,
        }
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && !self.is_positive()
    }

    /// Total lex comparison; fails when ranks differ.
    pub fn try_cmp(&self, other: &Value) -> Result<Ordering> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(self.coords.cmp(&other.coords))
    }

    pub fn checked_add(&self, other: &Value) -> Result<Value> {
        self.try_cmp(other)?;
        Ok(self + other)
    }

    pub fn scale(&self, k: &BigRational) -> Value {
        Value {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn scale_int(&self, k: u64) -> Value {
        self.scale(&BigRational::from_integer(k.into()))
    }

    /// The value with its least significant coordinate dropped (projection
    /// onto the quotient by the smallest non-trivial convex subgroup).
    pub fn truncated(&self, len: usize) -> Value {
        assert!(len >= 1 && len <= self.rank());
        Value {
            coords: self.coords[..len].to_vec(),
        }
    }

    /// The single coordinate of a rank-1 value.
    pub fn as_scalar(&self) -> Option<&BigRational> {
        match self.coords.as_slice() {
            [q] => Some(q),
            _ => None,
        }
    }

    /// Lowest common denominator of the coordinates.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()))
    }

    /// True when every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Canonical strings, one per coordinate.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.to_string()).collect()
    }

    pub fn parse_coords<S: AsRef<str>>(coords: &[S]) -> Result<Value> {
        let parsed = coords
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Value::new(parsed)
    }
}

impl PartialOrd for Value {
    /// `None` when the ranks differ.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl Add for &Value {
    type Output = Value;
    fn add(self, rhs: &Value) -> Value {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in value addition");
        Value {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Add for Value {
    type Output = Value;
    fn add(self, rhs: Value) -> Value {
        &self + &rhs
    }
}

impl Sub for &Value {
    type Output = Value;
    fn sub(self, rhs: &Value) -> Value {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in value subtraction");
        Value {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Value {
    type Output = Value;
    fn neg(self) -> Value {
        Value {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_scalar() {
            return write!(f, "{q}");
        }
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A valuation result: a finite value, or the value of zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(Value),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(&self) -> Option<&Value> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn try_cmp(&self, other: &Valuation) -> Result<Ordering> {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.try_cmp(b),
            (Valuation::Infinite, Valuation::Infinite) => Ok(Ordering::Equal),
            (Valuation::Infinite, _) => Ok(Ordering::Greater),
            (_, Valuation::Infinite) => Ok(Ordering::Less),
        }
    }

    pub fn min(self, other: Valuation) -> Valuation {
        match self.try_cmp(&other) {
            Ok(Ordering::Greater) => other,
            _ => self,
        }
    }
}

impl Add for &Valuation {
    type Output = Valuation;
    fn add(self, rhs: &Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "infinite"),
        }
    }
}

/// Parses `"a"` or `"a/b"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::BadRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// `(1,0) > (0,999)`, etc.
pub fn compare_values(a: &Value, b: &Value) -> Result<Ordering> {
    a.try_cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order() {
        let a = Value::from_ints(&[1, 0]);
        let b = Value::from_ints(&[0, 999]);
        assert_eq!(compare_values(&a, &b).unwrap(), Ordering::Greater);
        let h = Value::ratio(3, 2);
        assert_eq!(compare_values(&h, &h.clone()).unwrap(), Ordering::Equal);
        let one = Value::from_ints(&[0, 1]);
        assert_eq!(
            compare_values(&(&one + &one), &Value::from_ints(&[0, 2])).unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = Value::int(1);
        let b = Value::from_ints(&[1, 0]);
        assert!(matches!(
            compare_values(&a, &b),
            Err(Error::RankMismatch { left: 1, right: 2 })
        ));
        assert_eq!(a.partial_cmp(&b), None);
    }

    #[test]
    fn positivity() {
        assert!(Value::from_ints(&[1, -5]).is_positive());
        assert!(!Value::from_ints(&[0, 0]).is_positive());
        assert!(Value::from_ints(&[0, -1]).is_negative());
    }

    #[test]
    fn parse_and_print() {
        let v = Value::parse_coords(&["13/4"]).unwrap();
        assert_eq!(v.to_string(), "13/4");
        assert_eq!(Value::parse_coords(&["6/3"]).unwrap().to_string(), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(Value::from_ints(&[1, -1]).to_string(), "(1, -1)");
    }

    #[test]
    fn infinity_absorbs() {
        let v = Valuation::Finite(Value::int(3));
        assert!((&v + &Valuation::Infinite).is_infinite());
        assert_eq!(
            Valuation::Infinite.try_cmp(&v).unwrap(),
            Ordering::Greater
        );
    }
}
