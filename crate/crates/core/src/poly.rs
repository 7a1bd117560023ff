//! Sparse polynomials over a [`WeightedRing`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::ring::{Coeff, Monomial, WeightedRing};
use crate::value::{Valuation, Value};

/// A polynomial stored as a map from monomials to nonzero coefficients, so
/// structural equality is mathematical equality.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<WeightedRing>,
    terms: BTreeMap<Monomial, Coeff>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring)
            && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<WeightedRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<WeightedRing>) -> Self {
        Polynomial::constant(ring, &Coeff::one())
    }

    pub fn constant(ring: &Arc<WeightedRing>, c: &BigRational) -> Self {
        Polynomial::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &Arc<WeightedRing>, i: usize) -> Self {
        Polynomial::term(ring, Monomial::var(ring.nvars(), i, 1), &Coeff::one())
    }

    pub fn var_named(ring: &Arc<WeightedRing>, name: &str) -> Result<Self> {
        Ok(Polynomial::var(ring, ring.var_index(name)?))
    }

    /// Single term; panics if the rational is not a field element.
    pub fn term(ring: &Arc<WeightedRing>, m: Monomial, c: &BigRational) -> Self {
        Polynomial::from_terms(ring, [(m, c.clone())]).expect("coefficient outside the field")
    }

    /// Builds a polynomial, mapping coefficients into the field and
    /// combining repeated monomials.
    pub fn from_terms<I>(ring: &Arc<WeightedRing>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let field = ring.field();
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            if m.0.len() != ring.nvars() {
                return Err(Error::RingMismatch);
            }
            let c = field.element(&c)?;
            add_term(&mut out, field, m, c);
        }
        Ok(Polynomial {
            ring: ring.clone(),
            terms: out,
        })
    }

    /// Assumes coefficients are already reduced field elements.
    pub(crate) fn from_raw(ring: &Arc<WeightedRing>, terms: BTreeMap<Monomial, Coeff>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<WeightedRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn constant_term(&self) -> Coeff {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring,
            "polynomials from different rings"
        );
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        let field = self.ring.field();
        let c = field.element(c).expect("scalar outside the field");
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field.mul(a, &c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut sq = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// Minimum weight of a term; infinite for zero.
    pub fn weight(&self) -> Valuation {
        self.terms
            .keys()
            .map(|m| self.ring.int_weight(&m.0))
            .min()
            .map(|_| {
                let m = self.min_weight_monomial().unwrap();
                Valuation::Finite(self.ring.monomial_weight(m))
            })
            .unwrap_or(Valuation::Infinite)
    }

    fn min_weight_monomial(&self) -> Option<&Monomial> {
        self.terms
            .keys()
            .min_by(|a, b| self.ring.int_weight(&a.0).cmp(&self.ring.int_weight(&b.0)))
    }

    /// Sum of the terms of minimal weight.
    pub fn initial_form(&self) -> Result<Polynomial> {
        let min = self
            .terms
            .keys()
            .map(|m| self.ring.int_weight(&m.0))
            .min()
            .ok_or(Error::ZeroPolynomial)?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.int_weight(&m.0) == min)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    /// Terms outside the initial form.
    pub fn tail(&self) -> Polynomial {
        match self.initial_form() {
            Ok(init) => self - &init,
            Err(_) => self.clone(),
        }
    }

    /// Leading term for the local order: minimal weight, exponent-lex largest.
    pub fn lead(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().min_by(|a, b| {
            self.ring
                .int_weight(&a.0 .0)
                .cmp(&self.ring.int_weight(&b.0 .0))
                .then_with(|| b.0.cmp(a.0))
        })
    }

    /// Terms in ascending monomial order (the order polynomials print in).
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.ring.cmp_monomials(a.0, b.0));
        v
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Smallest total degree of a term (the order in the maximal ideal of the variables).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&i| self.uses_var(i)).collect()
    }

    /// Replaces `var` by `g` everywhere.
    pub fn substitute(&self, var: usize, g: &Polynomial) -> Result<Polynomial> {
        if var >= self.ring.nvars() {
            return Err(Error::UnknownVariable(format!("#{var}")));
        }
        self.check_ring(g);
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(&self.ring)];
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * g;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[var] = 0;
            let piece = powers[e].mul_monomial(&rest).scale(c);
            out = &out + &piece;
        }
        Ok(out)
    }

    pub fn substitute_named(&self, var: &str, g: &Polynomial) -> Result<Polynomial> {
        self.substitute(self.ring.var_index(var)?, g)
    }

    /// Drops every term that involves one of `vars`.
    pub fn set_zero(&self, vars: &[usize]) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m.0[v] == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Moves the polynomial into `target`, where source variable `i` becomes
    /// target variable `map[i]` (`None` only allowed for unused variables).
    pub fn transfer(&self, target: &Arc<WeightedRing>, map: &[Option<usize>]) -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.nvars()];
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] += e,
                    None => {
                        return Err(Error::UnknownVariable(self.ring.name(i).to_string()));
                    }
                }
            }
            terms.push((Monomial(exps), c.clone()));
        }
        Polynomial::from_terms(target, terms)
    }

    /// Same polynomial over a ring with the same variable layout.
    pub fn rebase(&self, target: &Arc<WeightedRing>) -> Result<Polynomial> {
        if target.nvars() != self.ring.nvars() {
            return Err(Error::RingMismatch);
        }
        let map: Vec<Option<usize>> = (0..target.nvars()).map(Some).collect();
        self.transfer(target, &map)
    }

    pub fn monomial_weight(&self, m: &Monomial) -> Value {
        self.ring.monomial_weight(m)
    }

    /// Formats one term without its sign.
    fn format_abs_term(&self, m: &Monomial, c: &BigRational) -> String {
        let c = c.abs();
        if m.is_one() {
            c.to_string()
        } else if c.is_one() {
            self.ring.format_monomial(m)
        } else {
            format!("{}*{}", c, self.ring.format_monomial(m))
        }
    }
}

fn add_term(map: &mut BTreeMap<Monomial, Coeff>, field: &crate::ring::Field, m: Monomial, c: Coeff) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&m) {
        Some(a) => {
            let s = field.add(a, &c);
            if s.is_zero() {
                map.remove(&m);
            } else {
                *a = s;
            }
        }
        None => {
            map.insert(m, c);
        }
    }
}

impl fmt::Display for Polynomial {
    /// Ascending monomial order, e.g. `y^2 - x^3 - u`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let c = field.display(c);
            let neg = c.is_negative();
            let body = self.format_abs_term(m, &c);
            match (i, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let field = self.ring.field();
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            add_term(&mut terms, field, m.clone(), c.clone());
        }
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let field = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let field = self.ring.field();
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                add_term(&mut terms, field, m.mul(n), field.mul(a, b));
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Substitutes `g` for `var` in `f`.
pub fn substitute(f: &Polynomial, var: usize, g: &Polynomial) -> Result<Polynomial> {
    f.substitute(var, g)
}

/// Initial form of `f` for the ring weight.
pub fn initial_form(f: &Polynomial) -> Result<Polynomial> {
    f.initial_form()
}

/// Shape of a random polynomial.
#[derive(Clone, Debug)]
pub struct RandomShape {
    pub max_degree: u32,
    pub max_terms: usize,
    pub coeff_bound: i64,
    /// Restrict to these variables; `None` means all.
    pub vars: Option<Vec<usize>>,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape {
            max_degree: 3,
            max_terms: 4,
            coeff_bound: 5,
            vars: None,
        }
    }
}

/// A random polynomial, possibly zero.
pub fn random_polynomial<R: Rng + ?Sized>(
    ring: &Arc<WeightedRing>,
    rng: &mut R,
    shape: &RandomShape,
) -> Polynomial {
    let vars: Vec<usize> = shape
        .vars
        .clone()
        .unwrap_or_else(|| (0..ring.nvars()).collect());
    let nterms = rng.gen_range(1..=shape.max_terms.max(1));
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let deg = rng.gen_range(0..=shape.max_degree);
        let mut exps = vec![0u32; ring.nvars()];
        for _ in 0..deg {
            exps[vars[rng.gen_range(0..vars.len())]] += 1;
        }
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-shape.coeff_bound..=shape.coeff_bound);
        }
        terms.push((Monomial(exps), BigRational::from_integer(c.into())));
    }
    Polynomial::from_terms(ring, terms).expect("integer coefficients are field elements")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Field;

    fn ring(wx: i64, wy: i64, wu: i64) -> Arc<WeightedRing> {
        WeightedRing::with_weights(
            Field::Rational,
            &[("x", Value::int(wx)), ("y", Value::int(wy)), ("u", Value::int(wu))],
        )
        .unwrap()
    }

    fn v(r: &Arc<WeightedRing>, i: usize) -> Polynomial {
        Polynomial::var(r, i)
    }

    #[test]
    fn initial_form_of_cusp_deformation() {
        let r = ring(4, 6, 15);
        let (x, y, u) = (v(&r, 0), v(&r, 1), v(&r, 2));
        let f = &(&y.pow(2) - &x.pow(3)) - &u;
        assert_eq!(f.initial_form().unwrap(), &y.pow(2) - &x.pow(3));
        assert_eq!(x.initial_form().unwrap(), x);
        assert_eq!(
            Polynomial::zero(&r).initial_form(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn initial_form_weight_gap() {
        let r = ring(8, 12, 1);
        let (x, y) = (v(&r, 0), v(&r, 1));
        let head = (&y.pow(2) - &x.pow(3)).pow(2);
        let f = &head - &(&x.pow(5) * &y);
        assert_eq!(f.initial_form().unwrap(), head);
        assert_eq!(f.weight(), Valuation::Finite(Value::int(48)));
    }

    #[test]
    fn substitution() {
        let r = ring(4, 6, 15);
        let (x, y, u) = (v(&r, 0), v(&r, 1), v(&r, 2));
        let g = &y.pow(2) - &x.pow(3);
        assert_eq!(u.pow(2).substitute(2, &g).unwrap(), g.pow(2));
        assert_eq!(x.substitute(1, &u.pow(7)).unwrap(), x);
        let f = &u.pow(2) - &(&x.pow(5) * &y);
        assert_eq!(f.substitute(2, &g).unwrap(), &g.pow(2) - &(&x.pow(5) * &y));
        assert!(x.substitute(9, &g).is_err());
    }

    #[test]
    fn display_ascending() {
        let r = ring(4, 6, 15);
        let (x, y, u) = (v(&r, 0), v(&r, 1), v(&r, 2));
        let f = &(&y.pow(2) - &x.pow(3)) - &u;
        assert_eq!(f.to_string(), "y^2 - x^3 - u");
        let g = &x.scale(&BigRational::new(3.into(), 2.into())) - &Polynomial::one(&r);
        assert_eq!(g.to_string(), "-1 + 3/2*x");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
    }

    #[test]
    fn prime_field_cancellation() {
        let r = WeightedRing::with_weights(Field::Prime(3), &[("x", Value::int(1))]).unwrap();
        let x = Polynomial::var(&r, 0);
        let f = &x + &x.scale(&BigRational::from_integer(2.into()));
        assert!(f.is_zero());
    }
}
