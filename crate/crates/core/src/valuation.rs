//! The valuation defined by a certified system, and its graded algebra.

use std::collections::BTreeMap;

use crate::deformation::{self, DeformationSystem};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::Monomial;
use crate::value::{Valuation, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationResult {
    pub value: Valuation,
    /// Normal form of the element, whose initial form carries the value.
    pub witness: Polynomial,
}

/// The value of `f` in the quotient presented by `system`.
pub fn value_of(f: &Polynomial, system: &DeformationSystem) -> Result<ValuationResult> {
    let witness = deformation::normal_form(f, system)?;
    Ok(ValuationResult {
        value: witness.weight(),
        witness,
    })
}

/// One homogeneous piece of the graded algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSlice {
    pub degree: Value,
    /// Standard monomials of this weight, exponent-lex ascending.
    pub basis: Vec<Monomial>,
}

impl GradedSlice {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// The canonical representative: the exponent-lex smallest standard monomial.
    pub fn representative(&self) -> &Monomial {
        &self.basis[0]
    }
}

/// Standard monomials of weight at most `bound` grouped by weight. Weights
/// of rank above one need `degree_cap` to keep the enumeration finite.
pub fn graded_algebra(
    system: &DeformationSystem,
    bound: &Value,
    degree_cap: Option<u32>,
) -> Result<Vec<GradedSlice>> {
    let cert = system.certificate()?;
    let ring = system.ring();
    if bound.rank() != ring.rank() {
        return Err(Error::RankMismatch {
            left: ring.rank(),
            right: bound.rank(),
        });
    }
    if ring.rank() > 1 && degree_cap.is_none() {
        return Err(Error::CapRequired(ring.rank()));
    }
    let cap = degree_cap.unwrap_or(u32::MAX);
    let leads = cert.head_leads();
    let n = ring.nvars();
    let mut slices: BTreeMap<Vec<num_rational::BigRational>, Vec<Monomial>> = BTreeMap::new();
    let mut exps = vec![0u32; n];

    #[allow(clippy::too_many_arguments)]
    fn walk(
        i: usize,
        acc: &Value,
        deg: u32,
        exps: &mut Vec<u32>,
        ring: &crate::ring::WeightedRing,
        bound: &Value,
        cap: u32,
        leads: &[Monomial],
        out: &mut BTreeMap<Vec<num_rational::BigRational>, Vec<Monomial>>,
    ) {
        if i == exps.len() {
            let m = Monomial(exps.clone());
            if !leads.iter().any(|l| l.divides(&m)) {
                out.entry(acc.coords().to_vec()).or_default().push(m);
            }
            return;
        }
        let mut cur = acc.clone();
        let mut d = deg;
        let mut e = 0;
        loop {
            exps[i] = e;
            walk(i + 1, &cur, d, exps, ring, bound, cap, leads, out);
            cur = &cur + ring.weight(i);
            d = d.saturating_add(1);
            e += 1;
            if cur > *bound || d > cap {
                break;
            }
        }
        exps[i] = 0;
    }

    walk(0, &Value::zero(ring.rank()), 0, &mut exps, ring, bound, cap, leads, &mut slices);
    Ok(slices
        .into_iter()
        .map(|(coords, mut basis)| {
            basis.sort();
            GradedSlice {
                degree: Value::new(coords).expect("nonempty coordinates"),
                basis,
            }
        })
        .collect())
}

/// Realized values up to `bound`, ascending.
pub fn value_semigroup(
    system: &DeformationSystem,
    bound: &Value,
    degree_cap: Option<u32>,
) -> Result<Vec<Value>> {
    Ok(graded_algebra(system, bound, degree_cap)?
        .into_iter()
        .map(|s| s.degree)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::EquationKind;
    use crate::ring::{Field, WeightedRing};
    use std::sync::Arc;

    fn s7() -> DeformationSystem {
        let r = WeightedRing::with_weights(
            Field::Rational,
            &[("x", Value::int(4)), ("y", Value::int(6)), ("u", Value::int(15))],
        )
        .unwrap();
        let (x, y, u) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1), Polynomial::var(&r, 2));
        DeformationSystem::from_polynomials(
            &r,
            vec![
                (&(&y.pow(2) - &x.pow(3)) - &u, EquationKind::Fi { trailing: Some(2) }),
                (&u.pow(2) - &(&x.pow(6) * &y), EquationKind::Fq),
            ],
        )
        .unwrap()
        .certify()
        .unwrap()
    }

    #[test]
    fn s7_values() {
        let sys = s7();
        let r = sys.ring().clone();
        let (x, y, u) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1), Polynomial::var(&r, 2));
        assert_eq!(value_of(&x, &sys).unwrap().value, Valuation::Finite(Value::int(4)));
        let v = value_of(&(&y.pow(2) - &x.pow(3)), &sys).unwrap();
        assert_eq!(v.value, Valuation::Finite(Value::int(15)));
        assert_eq!(v.witness, u);
        assert!(value_of(&(&u.pow(2) - &(&x.pow(6) * &y)), &sys).unwrap().value.is_infinite());
        assert_eq!(
            value_of(&Polynomial::one(&r), &sys).unwrap().value,
            Valuation::Finite(Value::int(0))
        );
    }

    #[test]
    fn s7_graded_pieces() {
        let sys = s7();
        let slices = graded_algebra(&sys, &Value::int(16), None).unwrap();
        let degrees: Vec<Value> = slices.iter().map(|s| s.degree.clone()).collect();
        let expect: Vec<Value> = [0, 4, 6, 8, 10, 12, 14, 15, 16].iter().map(|&d| Value::int(d)).collect();
        assert_eq!(degrees, expect);
        assert!(slices.iter().all(|s| s.dimension() == 1));
        let zero = graded_algebra(&sys, &Value::int(0), None).unwrap();
        assert_eq!(zero.len(), 1);
    }

    #[test]
    fn free_rank_two() {
        let r: Arc<WeightedRing> = WeightedRing::with_weights(
            Field::Rational,
            &[("x", Value::from_ints(&[1, 0])), ("y", Value::from_ints(&[0, 1]))],
        )
        .unwrap();
        let sys = DeformationSystem::new(&r, vec![]).unwrap().certify().unwrap();
        assert_eq!(
            graded_algebra(&sys, &Value::from_ints(&[1, 1]), None),
            Err(Error::CapRequired(2))
        );
        let g = value_semigroup(&sys, &Value::from_ints(&[1, 1]), Some(3)).unwrap();
        let expect: Vec<Value> = [[0, 0], [0, 1], [0, 2], [0, 3], [1, 0], [1, 1]]
            .iter()
            .map(|c| Value::from_ints(c))
            .collect();
        assert_eq!(g, expect);
    }
}
