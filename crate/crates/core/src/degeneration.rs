//! The one-parameter family degenerating a system to its toric heads.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::deformation::{Binomial, BinomialIdeal, DeformationSystem, DeformedEquation, EquationKind};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::{Coeff, Field, Monomial, WeightedRing};

/// `coeff * v^v_exponent * monomial` in the renamed variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTerm {
    pub coeff: Coeff,
    pub v_exponent: BigRational,
    pub monomial: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyEquation {
    pub terms: Vec<FamilyTerm>,
    pub kind: EquationKind,
}

/// Equations over `k[v]` whose fiber at `v = 1` is the original system and
/// whose fiber at `v = 0` is the toric ideal of the heads.
#[derive(Clone, Debug)]
pub struct Family {
    ring: Arc<WeightedRing>,
    equations: Vec<FamilyEquation>,
}

impl Family {
    /// Variables of the family, named with a `t` suffix.
    pub fn ring(&self) -> &Arc<WeightedRing> {
        &self.ring
    }

    pub fn equations(&self) -> &[FamilyEquation] {
        &self.equations
    }

    /// The terms of `v`-degree zero of each equation.
    pub fn special_fiber(&self) -> Vec<Polynomial> {
        self.equations
            .iter()
            .map(|eq| {
                let terms = eq
                    .terms
                    .iter()
                    .filter(|t| t.v_exponent.is_zero())
                    .map(|t| (t.monomial.clone(), t.coeff.clone()));
                Polynomial::from_terms(&self.ring, terms).expect("coefficients are field elements")
            })
            .collect()
    }

    pub fn format_equation(&self, i: usize) -> String {
        let field = self.ring.field();
        let mut out = String::new();
        for (k, t) in self.equations[i].terms.iter().enumerate() {
            let c = field.display(&t.coeff);
            let mut factors = Vec::new();
            if !t.v_exponent.is_zero() {
                factors.push(if t.v_exponent.is_one() {
                    "v".to_string()
                } else if t.v_exponent.is_integer() {
                    format!("v^{}", t.v_exponent)
                } else {
                    format!("v^({})", t.v_exponent)
                });
            }
            if !t.monomial.is_one() {
                factors.push(self.ring.format_monomial(&t.monomial));
            }
            let abs = c.abs();
            let body = match (abs.is_one(), factors.is_empty()) {
                (_, true) => abs.to_string(),
                (true, false) => factors.join("*"),
                (false, false) => format!("{abs}*{}", factors.join("*")),
            };
            out.push_str(match (k, c.is_negative()) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            });
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.equations.len() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", self.format_equation(i))?;
        }
        Ok(())
    }
}

/// Rescales each equation by its head weight: a term `c u^p` becomes
/// `c v^(w(p) - w(head)) ũ^p`.
pub fn degenerate(system: &DeformationSystem) -> Result<Family> {
    system.certificate()?;
    let ring = system.ring();
    if ring.rank() != 1 {
        return Err(Error::RankOneRequired(ring.rank()));
    }
    let tilde = ring.renamed("t")?;
    let mut equations = Vec::with_capacity(system.equations().len());
    for eq in system.equations() {
        let head = eq.head_weight().coords()[0].clone();
        let terms = eq
            .poly()
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| FamilyTerm {
                coeff: c.clone(),
                v_exponent: &ring.monomial_weight(m).coords()[0] - &head,
                monomial: m.clone(),
            })
            .collect();
        equations.push(FamilyEquation {
            terms,
            kind: eq.kind().clone(),
        });
    }
    Ok(Family {
        ring: tilde,
        equations,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpecializeAt {
    Zero,
    Value(Coeff),
}

#[derive(Clone, Debug)]
pub enum Specialization {
    /// The fiber at zero: the heads.
    Toric(BinomialIdeal),
    /// A general fiber, not yet certified.
    System(DeformationSystem),
}

pub fn specialize(family: &Family, at: &SpecializeAt) -> Result<Specialization> {
    let ring = family.ring();
    let field = ring.field();
    match at {
        SpecializeAt::Zero => {
            let mut binomials = Vec::new();
            for eq in family.equations() {
                let head: Vec<&FamilyTerm> = eq.terms.iter().filter(|t| t.v_exponent.is_zero()).collect();
                let [a, b] = head[..] else {
                    return Err(Error::Specialization(format!(
                        "an equation has {} terms of v-degree zero",
                        head.len()
                    )));
                };
                let lambda = field.neg(&field.div(&b.coeff, &a.coeff)?);
                binomials.push(Binomial::oriented(a.monomial.clone(), b.monomial.clone(), lambda, ring)?);
            }
            Ok(Specialization::Toric(BinomialIdeal::new(ring, binomials)?))
        }
        SpecializeAt::Value(v0) => {
            let v0 = field.element(v0)?;
            if v0.is_zero() {
                return specialize(family, &SpecializeAt::Zero);
            }
            let mut eqs = Vec::with_capacity(family.equations().len());
            for eq in family.equations() {
                let mut terms = Vec::with_capacity(eq.terms.len());
                for t in &eq.terms {
                    let scale = rational_power(field, &v0, &t.v_exponent)?;
                    terms.push((t.monomial.clone(), field.mul(&t.coeff, &scale)));
                }
                let poly = Polynomial::from_terms(ring, terms)?;
                eqs.push(DeformedEquation::new(poly, eq.kind.clone())?);
            }
            Ok(Specialization::System(DeformationSystem::new(ring, eqs)?))
        }
    }
}

/// `v^(a/b)` when `v` has a `b`-th root in the field.
fn rational_power(field: &Field, v: &Coeff, e: &BigRational) -> Result<Coeff> {
    let b = e.denom().to_u32().ok_or_else(|| Error::Specialization("exponent denominator too large".into()))?;
    let a = e.numer().to_i64().ok_or_else(|| Error::Specialization("exponent too large".into()))?;
    let root = nth_root(field, v, b)
        .ok_or_else(|| Error::Specialization(format!("{} has no {b}-th root in {field}", field.display(v))))?;
    field.pow(&root, a)
}

fn nth_root(field: &Field, v: &Coeff, n: u32) -> Option<Coeff> {
    if n == 1 {
        return Some(v.clone());
    }
    match field {
        Field::Rational => {
            let neg = v.is_negative();
            if neg && n.is_multiple_of(2) {
                return None;
            }
            let root_int = |x: &BigInt| -> Option<BigInt> {
                let r = x.nth_root(n);
                (r.pow(n) == *x).then_some(r)
            };
            let num = root_int(&v.numer().abs())?;
            let den = root_int(v.denom())?;
            let r = BigRational::new(num, den);
            Some(if neg { -r } else { r })
        }
        Field::Prime(p) => {
            if *p > 1 << 22 {
                return None;
            }
            (1..*p)
                .map(|r| BigRational::from_integer(BigInt::from(r)))
                .find(|r| field.pow(r, n as i64).ok().as_ref() == Some(v))
        }
    }
}
