//! Coefficient fields, weighted polynomial rings and monomials.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::value::Value;

/// Field elements are always stored as `BigRational`; over a prime field they
/// are kept reduced to integers in `[0, p)`.
pub type Coeff = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Maps a rational into the field.
    pub fn element(&self, q: &BigRational) -> Result<Coeff> {
        match self {
            Field::Rational => Ok(q.clone()),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let den = q.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::NotInField(q.to_string()));
                }
                let inv = mod_inverse(&den, &p);
                let v = (q.numer().mod_floor(&p) * inv).mod_floor(&p);
                Ok(BigRational::from_integer(v))
            }
        }
    }

    fn reduce(&self, q: BigRational) -> Coeff {
        match self {
            Field::Rational => q,
            Field::Prime(p) => {
                debug_assert!(q.is_integer());
                BigRational::from_integer(q.to_integer().mod_floor(&BigInt::from(*p)))
            }
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.reduce(-a)
    }

    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Field::Rational => Ok(a.recip()),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                Ok(BigRational::from_integer(mod_inverse(&a.to_integer(), &p)))
            }
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Coeff, e: i64) -> Result<Coeff> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Coeff::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            sq = self.mul(&sq, &sq);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Printable form: over a prime field, elements above `p/2` print as negatives.
    pub fn display(&self, a: &Coeff) -> BigRational {
        match self {
            Field::Rational => a.clone(),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let v = a.to_integer();
                if &v * 2 > p {
                    BigRational::from_integer(v - p)
                } else {
                    a.clone()
                }
            }
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let g = a.extended_gcd(p);
    g.x.mod_floor(p)
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Exponent vector, one entry per ring variable. The derived order is the
/// plain exponent-lex order used to break weight ties.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Monomial(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(
                self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub weight: Value,
}

/// A polynomial ring over a field with a positive weight on each variable.
///
/// The monomial order compares weights first and breaks ties by exponent-lex
/// in the declared variable order.
#[derive(Debug, PartialEq, Eq)]
pub struct WeightedRing {
    field: Field,
    vars: Vec<Variable>,
    rank: usize,
    // weights scaled by `scale` to integers, one row per variable
    int_weights: Vec<Vec<i64>>,
    scale: BigInt,
}

impl WeightedRing {
    pub fn new(field: Field, vars: Vec<Variable>) -> Result<Arc<WeightedRing>> {
        if vars.is_empty() {
            return Err(Error::EmptyRing);
        }
        if let Field::Prime(p) = field {
            if p < 2 || !is_prime(p) {
                return Err(Error::Equation(format!("{p} is not a prime")));
            }
        }
        let rank = vars[0].weight.rank();
        for (i, v) in vars.iter().enumerate() {
            if v.name.is_empty() || !v.name.chars().next().unwrap().is_alphabetic() {
                return Err(Error::Equation(format!("bad variable name {:?}", v.name)));
            }
            if !v.name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::Equation(format!("bad variable name {:?}", v.name)));
            }
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
            if v.weight.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: v.weight.rank(),
                });
            }
            if !v.weight.is_positive() {
                return Err(Error::NonPositiveWeight {
                    name: v.name.clone(),
                    weight: v.weight.to_string(),
                });
            }
        }
        let scale = vars
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(&v.weight.denominator_lcm()));
        let scale_q = BigRational::from_integer(scale.clone());
        let int_weights = vars
            .iter()
            .map(|v| {
                v.weight
                    .coords()
                    .iter()
                    .map(|c| {
                        (c * &scale_q)
                            .to_integer()
                            .to_i64()
                            .ok_or_else(|| Error::Equation("weight too large".into()))
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(WeightedRing {
            field,
            vars,
            rank,
            int_weights,
            scale,
        }))
    }

    /// Convenience constructor for rank-1 weights.
    pub fn with_weights(field: Field, vars: &[(&str, Value)]) -> Result<Arc<WeightedRing>> {
        WeightedRing::new(
            field,
            vars.iter()
                .map(|(n, w)| Variable {
                    name: n.to_string(),
                    weight: w.clone(),
                })
                .collect(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    pub fn weight(&self, i: usize) -> &Value {
        &self.vars[i].weight
    }

    pub fn weights(&self) -> Vec<Value> {
        self.vars.iter().map(|v| v.weight.clone()).collect()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Common denominator of all weight coordinates.
    pub fn weight_scale(&self) -> &BigInt {
        &self.scale
    }

    pub(crate) fn int_weights(&self) -> &[Vec<i64>] {
        &self.int_weights
    }

    /// Weight of an exponent vector, scaled by [`Self::weight_scale`].
    pub fn int_weight(&self, exps: &[u32]) -> Vec<i128> {
        let mut w = vec![0i128; self.rank];
        for (e, row) in exps.iter().zip(&self.int_weights) {
            if *e == 0 {
                continue;
            }
            for (acc, c) in w.iter_mut().zip(row) {
                *acc += *e as i128 * *c as i128;
            }
        }
        w
    }

    pub fn monomial_weight(&self, m: &Monomial) -> Value {
        let mut acc = Value::zero(self.rank);
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                acc = &acc + &self.vars[i].weight.scale_int(e as u64);
            }
        }
        acc
    }

    /// Weight first, then exponent-lex.
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.int_weight(&a.0)
            .cmp(&self.int_weight(&b.0))
            .then_with(|| a.cmp(b))
    }

    /// The ring on a subset of the variables, in the given order.
    pub fn subring(&self, indices: &[usize]) -> Result<Arc<WeightedRing>> {
        WeightedRing::new(
            self.field.clone(),
            indices.iter().map(|&i| self.vars[i].clone()).collect(),
        )
    }

    /// Same weights, every name suffixed.
    pub fn renamed(&self, suffix: &str) -> Result<Arc<WeightedRing>> {
        WeightedRing::new(
            self.field.clone(),
            self.vars
                .iter()
                .map(|v| Variable {
                    name: format!("{}{}", v.name, suffix),
                    weight: v.weight.clone(),
                })
                .collect(),
        )
    }

    pub fn same_layout(&self, other: &WeightedRing) -> bool {
        self.field == other.field
            && self.vars.len() == other.vars.len()
            && self
                .vars
                .iter()
                .zip(&other.vars)
                .all(|(a, b)| a.weight == b.weight)
    }

    /// Formats a monomial as `x^3*y`, or `1` for the unit.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.vars[i].name.clone()
                } else {
                    format!("{}^{}", self.vars[i].name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Rational rank of the group generated by the weights.
    pub fn rational_rank(&self) -> usize {
        crate::lattice::rational_rank(&self.weights())
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Weight-then-lex comparison of two monomials in a ring.
pub fn monomial_compare(a: &Monomial, b: &Monomial, ring: &WeightedRing) -> Result<Ordering> {
    if a.0.len() != ring.nvars() || b.0.len() != ring.nvars() {
        return Err(Error::RingMismatch);
    }
    Ok(ring.cmp_monomials(a, b))
}
