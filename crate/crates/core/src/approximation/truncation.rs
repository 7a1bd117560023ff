//! Truncations of a system to an initial set of generators.

use std::sync::Arc;

use crate::deformation::{DeformationSystem, DeformedEquation, EquationKind};
use crate::error::{Error, Result};
use crate::lattice;
use crate::poly::Polynomial;
use crate::ring::WeightedRing;
use crate::valuation::{self, ValuationResult};
use crate::value::{Valuation, Value};

use super::initial::InitialSet;

/// The quotient by the generators outside an initial set, presented by the
/// equations whose heads only involve kept generators.
#[derive(Clone, Debug)]
pub struct TruncationIdeal {
    set: InitialSet,
    excluded: Vec<usize>,
    map: Vec<Option<usize>>,
    kept: Vec<usize>,
    quotient: DeformationSystem,
}

impl TruncationIdeal {
    pub fn set(&self) -> &InitialSet {
        &self.set
    }

    pub fn excluded(&self) -> &[usize] {
        &self.excluded
    }

    /// Indices of the equations that survive.
    pub fn kept_equations(&self) -> &[usize] {
        &self.kept
    }

    /// The certified truncated system, over the ring of kept generators.
    pub fn quotient(&self) -> &DeformationSystem {
        &self.quotient
    }

    pub fn ring(&self) -> &Arc<WeightedRing> {
        self.quotient.ring()
    }

    /// Image of an element of the full ring.
    pub fn restrict(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring().nvars() != self.map.len() {
            return Err(Error::RingMismatch);
        }
        f.set_zero(&self.excluded).transfer(self.ring(), &self.map)
    }

    /// Smallest weight among the excluded generators.
    pub fn threshold(&self, ring: &WeightedRing) -> Option<Value> {
        self.excluded
            .iter()
            .map(|&i| ring.weight(i).clone())
            .reduce(|a, b| if b < a { b } else { a })
    }
}

/// Checks that `base` is a valid bottom set: it generates the value group
/// rationally and holds every variable of the quasi-homogeneous equations.
pub fn validate_base(system: &DeformationSystem, base: &[usize]) -> Result<()> {
    let ring = system.ring();
    if let Some(&i) = base.iter().find(|&&i| i >= ring.nvars()) {
        return Err(Error::Truncation(format!("base index {i} out of range")));
    }
    let weights: Vec<Value> = base.iter().map(|&i| ring.weight(i).clone()).collect();
    if lattice::rational_rank(&weights) != ring.rational_rank() {
        return Err(Error::Truncation(format!(
            "base generators have rational rank {}, the value group has {}",
            lattice::rational_rank(&weights),
            ring.rational_rank()
        )));
    }
    for eq in system.equations() {
        if *eq.kind() == EquationKind::Fq {
            if let Some(v) = eq.poly().support().into_iter().find(|v| !base.contains(v)) {
                return Err(Error::Truncation(format!(
                    "{} occurs in the equation {} but is not a base generator",
                    ring.name(v),
                    eq.poly()
                )));
            }
        }
    }
    Ok(())
}

pub fn truncate(system: &DeformationSystem, set: &InitialSet, base: &[usize]) -> Result<TruncationIdeal> {
    system.certificate()?;
    let ring = system.ring();
    validate_base(system, base)?;
    if let Some(&i) = base.iter().find(|&&i| !set.contains(i)) {
        return Err(Error::Truncation(format!(
            "{} is a base generator missing from the set",
            ring.name(i)
        )));
    }
    let weights = ring.weights();
    InitialSet::new(set.to_vec(), &weights)?;
    let indices = set.to_vec();
    let excluded: Vec<usize> = (0..ring.nvars()).filter(|i| !set.contains(*i)).collect();
    let mut map = vec![None; ring.nvars()];
    for (k, &i) in indices.iter().enumerate() {
        map[i] = Some(k);
    }
    let sub = ring.subring(&indices)?;
    let mut kept = Vec::new();
    let mut eqs = Vec::new();
    for (l, eq) in system.equations().iter().enumerate() {
        let head = eq.head_poly();
        if head.support().iter().any(|v| !set.contains(*v)) {
            continue;
        }
        let poly = eq.poly().set_zero(&excluded).transfer(&sub, &map)?;
        let kind = match eq.kind() {
            EquationKind::Fq => EquationKind::Fq,
            EquationKind::Fi { trailing } => EquationKind::Fi {
                trailing: trailing.and_then(|t| map[t]),
            },
        };
        eqs.push(DeformedEquation::new(poly, kind)?);
        kept.push(l);
    }
    let quotient = DeformationSystem::new(&sub, eqs)?
        .certify()
        .map_err(|e| Error::Truncation(format!("the truncation to {indices:?} does not certify: {e}")))?;
    Ok(TruncationIdeal {
        set: set.clone(),
        excluded,
        map,
        kept,
        quotient,
    })
}

/// The value of `f` for the truncation's semivaluation.
pub fn semivaluation_value(f: &Polynomial, trunc: &TruncationIdeal) -> Result<ValuationResult> {
    valuation::value_of(&trunc.restrict(f)?, trunc.quotient())
}

/// Generators of the truncation ideals written in the non-trailing variables.
#[derive(Clone, Debug)]
pub struct Elimination {
    /// `(variable, expression)` for each trailing variable in the ring.
    pub trailing: Vec<(usize, Polynomial)>,
    /// Open-trailing equations after elimination.
    pub open: Vec<Polynomial>,
    /// Variables that are not the trailing variable of any equation.
    pub free: Vec<usize>,
}

pub fn eliminate(system: &DeformationSystem) -> Result<Elimination> {
    let ring = system.ring();
    let field = ring.field();
    let mut trailing: Vec<(usize, &DeformedEquation)> = system
        .equations()
        .iter()
        .filter_map(|e| e.trailing().map(|t| (t, e)))
        .collect();
    trailing.sort_by(|a, b| {
        ring.weight(a.0)
            .partial_cmp(ring.weight(b.0))
            .expect("uniform rank")
            .then(a.0.cmp(&b.0))
    });
    let mut done: Vec<(usize, Polynomial)> = Vec::new();
    let subst = |p: Polynomial, done: &[(usize, Polynomial)]| -> Result<Polynomial> {
        let mut p = p;
        for (v, xi) in done.iter().rev() {
            if p.uses_var(*v) {
                p = p.substitute(*v, xi)?;
            }
        }
        Ok(p)
    };
    for (t, eq) in trailing {
        let ut = crate::ring::Monomial::var(ring.nvars(), t, 1);
        let c = eq.poly().coefficient(&ut);
        let rest = eq.poly() - &Polynomial::term(ring, ut, &c);
        let xi = rest.scale(&field.neg(&field.inv(&c)?));
        let xi = subst(xi, &done)?;
        done.push((t, xi));
    }
    let mut open = Vec::new();
    for eq in system.equations() {
        if let EquationKind::Fi { trailing: None } = eq.kind() {
            open.push(subst(eq.poly().clone(), &done)?);
        }
    }
    let free = (0..ring.nvars())
        .filter(|v| done.iter().all(|(t, _)| t != v))
        .collect();
    Ok(Elimination {
        trailing: done,
        open,
        free,
    })
}

#[derive(Clone, Debug)]
pub struct OrderRow {
    pub set: InitialSet,
    /// Smallest order of a generator; `None` when the ideal is zero.
    pub order: Option<u32>,
    pub generators: Vec<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct OrderGrowth {
    pub rows: Vec<OrderRow>,
    pub nondecreasing: bool,
}

/// Orders of the truncation ideals along a chain, measured on their
/// generators in the power series ring of the free variables.
pub fn order_growth_report(system: &DeformationSystem, chain: &[InitialSet]) -> Result<OrderGrowth> {
    let el = eliminate(system)?;
    let ring = system.ring();
    let mut rows = Vec::new();
    for set in chain {
        let mut gens: Vec<Polynomial> = Vec::new();
        for v in &el.free {
            if !set.contains(*v) {
                gens.push(Polynomial::var(ring, *v));
            }
        }
        for (t, xi) in &el.trailing {
            if !set.contains(*t) {
                gens.push(xi.clone());
            }
        }
        gens.extend(el.open.iter().cloned());
        gens.retain(|g| !g.is_zero());
        let order = gens.iter().filter_map(Polynomial::order).min();
        rows.push(OrderRow {
            set: set.clone(),
            order,
            generators: gens,
        });
    }
    let nondecreasing = rows.windows(2).all(|w| match (w[0].order, w[1].order) {
        (Some(a), Some(b)) => a <= b,
        (_, None) => true,
        (None, Some(_)) => false,
    });
    Ok(OrderGrowth { rows, nondecreasing })
}

/// Values of one element along a chain of truncations.
#[derive(Clone, Debug)]
pub struct Stabilization {
    pub values: Vec<Valuation>,
    /// Smallest excluded weight at each level.
    pub thresholds: Vec<Option<Value>>,
    /// First level from which the values no longer change.
    pub stable_from: usize,
    /// Every value below its level's threshold persists at later levels.
    pub consistent: bool,
}

pub fn stabilization(f: &Polynomial, truncations: &[TruncationIdeal]) -> Result<Stabilization> {
    let ring = f.ring();
    let mut values = Vec::new();
    let mut thresholds = Vec::new();
    for t in truncations {
        values.push(semivaluation_value(f, t)?.value);
        thresholds.push(t.threshold(ring));
    }
    let last = values.len().saturating_sub(1);
    let stable_from = (0..values.len())
        .find(|&i| values[i..].iter().all(|v| *v == values[last]))
        .unwrap_or(0);
    let mut consistent = true;
    for i in 0..values.len() {
        let Valuation::Finite(v) = &values[i] else { continue };
        let below = match &thresholds[i] {
            Some(w) => v < w,
            None => true,
        };
        if below && values[i + 1..].iter().any(|w| *w != values[i]) {
            consistent = false;
        }
    }
    Ok(Stabilization {
        values,
        thresholds,
        stable_from,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;
    use crate::ring::Field;

    fn cusp() -> (Arc<WeightedRing>, DeformationSystem) {
        let r = WeightedRing::with_weights(
            Field::Rational,
            &[
                ("x", Value::int(4)),
                ("y", Value::int(6)),
                ("u", Value::int(13)),
            ],
        )
        .unwrap();
        let sys = DeformationSystem::from_polynomials(
            &r,
            vec![
                (parse_poly("y^2 - x^3 - u", &r).unwrap(), EquationKind::Fi { trailing: Some(2) }),
                (parse_poly("u^2 - x^5*y", &r).unwrap(), EquationKind::Fi { trailing: None }),
            ],
        )
        .unwrap()
        .certify()
        .unwrap();
        (r, sys)
    }

    #[test]
    fn truncate_to_plane() {
        let (r, sys) = cusp();
        let w = r.weights();
        let b = InitialSet::new([0, 1], &w).unwrap();
        let t = truncate(&sys, &b, &[0, 1]).unwrap();
        assert_eq!(t.kept_equations(), &[0]);
        assert_eq!(t.quotient().equations()[0].poly().to_string(), "y^2 - x^3");
        let h = parse_poly("y^2 - x^3 + x^5", &r).unwrap();
        assert_eq!(
            semivaluation_value(&h, &t).unwrap().value,
            Valuation::Finite(Value::int(20))
        );
        let full = truncate(&sys, &InitialSet::new(0..3, &w).unwrap(), &[0, 1]).unwrap();
        assert_eq!(
            semivaluation_value(&h, &full).unwrap().value,
            Valuation::Finite(Value::int(13))
        );
        let s = stabilization(&h, &[t, full]).unwrap();
        assert!(s.consistent);
        assert_eq!(s.stable_from, 1);
        assert!(truncate(&sys, &InitialSet::new([0], &w).unwrap(), &[0, 1]).is_err());
    }

    #[test]
    fn orders() {
        let (r, sys) = cusp();
        let w = r.weights();
        let chain = vec![
            InitialSet::new([0, 1], &w).unwrap(),
            InitialSet::new(0..3, &w).unwrap(),
        ];
        let rep = order_growth_report(&sys, &chain).unwrap();
        let orders: Vec<Option<u32>> = rep.rows.iter().map(|r| r.order).collect();
        assert_eq!(orders, vec![Some(2), Some(4)]);
        assert!(rep.nondecreasing);
        let el = eliminate(&sys).unwrap();
        assert_eq!(el.trailing[0].1.to_string(), "y^2 - x^3");
    }
}
