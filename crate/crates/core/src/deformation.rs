//! Binomial heads, overweight equations and their certification.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner::{self, MonomialOrder, Order, WPoly};
use crate::lattice;
use crate::poly::Polynomial;
use crate::ring::{Coeff, Monomial, WeightedRing};
use crate::semigroup::{split_vector, RelationBasis};
use crate::value::{Valuation, Value};

/// The binomial `u^m - lambda u^n`, with `u^m` the exponent-lex larger monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binomial {
    pub m: Monomial,
    pub n: Monomial,
    pub lambda: Coeff,
}

impl Binomial {
    /// Orients `u^a - lambda u^b` so the lex-larger monomial comes first.
    pub fn oriented(a: Monomial, b: Monomial, lambda: Coeff, ring: &WeightedRing) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::ZeroLambda);
        }
        let field = ring.field();
        let lambda = field.element(&lambda)?;
        if a >= b {
            Ok(Binomial { m: a, n: b, lambda })
        } else {
            Ok(Binomial {
                m: b,
                n: a,
                lambda: field.inv(&lambda)?,
            })
        }
    }

    pub fn to_polynomial(&self, ring: &Arc<WeightedRing>) -> Polynomial {
        let field = ring.field();
        Polynomial::from_raw(ring, {
            let mut t = std::collections::BTreeMap::new();
            t.insert(self.m.clone(), Coeff::one());
            t.insert(self.n.clone(), field.neg(&self.lambda));
            t
        })
    }

    /// `m - n` as an integer vector.
    pub fn vector(&self) -> Vec<i64> {
        self.m
            .0
            .iter()
            .zip(&self.n.0)
            .map(|(a, b)| *a as i64 - *b as i64)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialIdeal {
    ring: Arc<WeightedRing>,
    binomials: Vec<Binomial>,
}

impl BinomialIdeal {
    pub fn new(ring: &Arc<WeightedRing>, binomials: Vec<Binomial>) -> Result<Self> {
        for b in &binomials {
            if b.m.0.len() != ring.nvars() || b.n.0.len() != ring.nvars() {
                return Err(Error::RingMismatch);
            }
            if ring.monomial_weight(&b.m) != ring.monomial_weight(&b.n) {
                return Err(Error::NotARelation(b.vector()));
            }
            if b.lambda.is_zero() {
                return Err(Error::ZeroLambda);
            }
        }
        Ok(BinomialIdeal {
            ring: ring.clone(),
            binomials,
        })
    }

    pub fn ring(&self) -> &Arc<WeightedRing> {
        &self.ring
    }

    pub fn binomials(&self) -> &[Binomial] {
        &self.binomials
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.binomials
            .iter()
            .map(|b| b.to_polynomial(&self.ring))
            .collect()
    }

    pub fn vectors(&self) -> Vec<Vec<i64>> {
        self.binomials.iter().map(Binomial::vector).collect()
    }

    /// Rank of the lattice spanned by the exponent differences.
    pub fn lattice_rank(&self) -> usize {
        lattice::rank(&self.vectors())
    }

    /// The spanned lattice equals its rational saturation.
    pub fn is_saturated(&self) -> bool {
        lattice::smith_diagonal(&self.vectors()).iter().all(One::is_one)
    }

    /// Checks `prod lambda_l^{c_l} = 1` for every integer relation
    /// `sum c_l (m^l - n^l) = 0` between the binomials.
    pub fn check_character(&self) -> Result<()> {
        let k = self.binomials.len();
        if k == 0 {
            return Ok(());
        }
        let vs = self.vectors();
        let rows: Vec<Vec<i64>> = (0..self.ring.nvars())
            .map(|i| vs.iter().map(|v| v[i]).collect())
            .collect();
        let field = self.ring.field();
        for c in lattice::integer_kernel(&rows, k) {
            let mut prod = Coeff::one();
            for (l, &e) in c.iter().enumerate() {
                if e != 0 {
                    prod = field.mul(&prod, &field.pow(&self.binomials[l].lambda, e)?);
                }
            }
            if !prod.is_one() {
                return Err(Error::InconsistentCharacter {
                    relation: c,
                    product: field.display(&prod).to_string(),
                });
            }
        }
        Ok(())
    }
}

/// One binomial per basis vector, `u^{v+} - lambda u^{v-}`, oriented with
/// the lex-larger monomial first.
pub fn binomials_from_relations(
    ring: &Arc<WeightedRing>,
    basis: &RelationBasis,
    lambdas: &[Coeff],
) -> Result<BinomialIdeal> {
    if lambdas.len() != basis.len() {
        return Err(Error::LambdaCount {
            lambdas: lambdas.len(),
            vectors: basis.len(),
        });
    }
    let mut out = Vec::with_capacity(basis.len());
    for (i, v) in basis.vectors().iter().enumerate() {
        if v.len() != ring.nvars() {
            return Err(Error::RingMismatch);
        }
        let (m, n) = split_vector(v);
        out.push(Binomial::oriented(Monomial(m), Monomial(n), lambdas[i].clone(), ring)?);
    }
    let ideal = BinomialIdeal::new(ring, out)?;
    ideal.check_character()?;
    Ok(ideal)
}

/// How an equation enters the structure theorem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquationKind {
    /// Head plus tail.
    Fq,
    /// Head plus tail plus a linear term in the trailing variable, which
    /// occurs nowhere else in the equation. `None` marks a trailing variable
    /// outside the ring (the next generator of a truncated chain).
    Fi { trailing: Option<usize> },
}

/// A polynomial whose initial form is a binomial and whose other terms are
/// strictly heavier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformedEquation {
    poly: Polynomial,
    kind: EquationKind,
    head: Binomial,
    head_poly: Polynomial,
    head_weight: Value,
}

impl DeformedEquation {
    pub fn new(poly: Polynomial, kind: EquationKind) -> Result<Self> {
        let ring = poly.ring().clone();
        if poly.is_zero() {
            return Err(Error::Equation("the zero polynomial is not an equation".into()));
        }
        // group terms by weight
        let mut by_weight: Vec<(Vec<i128>, Vec<(&Monomial, &Coeff)>)> = Vec::new();
        for (m, c) in poly.sorted_terms() {
            let w = ring.int_weight(&m.0);
            match by_weight.last_mut() {
                Some((lw, v)) if *lw == w => v.push((m, c)),
                _ => by_weight.push((w, vec![(m, c)])),
            }
        }
        let Some(hi) = by_weight.iter().position(|(_, v)| v.len() >= 2) else {
            return Err(Error::Equation(format!("{poly} has no binomial head")));
        };
        let head_terms = &by_weight[hi].1;
        let head_weight = ring.monomial_weight(head_terms[0].0);
        if let Some((_, lighter)) = by_weight[..hi].first() {
            let (m, _) = lighter[0];
            return Err(Error::TailWeight {
                term: ring.format_monomial(m),
                term_weight: ring.monomial_weight(m).to_string(),
                head_weight: head_weight.to_string(),
            });
        }
        if head_terms.len() > 2 {
            return Err(Error::Equation(format!(
                "initial form of {poly} has {} terms, expected a binomial",
                head_terms.len()
            )));
        }
        let field = ring.field();
        let (a, ca) = head_terms[0];
        let (b, cb) = head_terms[1];
        // head = ca u^a + cb u^b  ~  u^a - lambda u^b
        let lambda = field.neg(&field.div(cb, ca)?);
        let head = Binomial::oriented(a.clone(), b.clone(), lambda, &ring)?;
        let head_poly = Polynomial::from_raw(
            &ring,
            [(a.clone(), ca.clone()), (b.clone(), cb.clone())].into_iter().collect(),
        );
        if let EquationKind::Fi { trailing: Some(t) } = kind {
            if t >= ring.nvars() {
                return Err(Error::UnknownVariable(format!("#{t}")));
            }
            let ut = Monomial::var(ring.nvars(), t, 1);
            if poly.coefficient(&ut).is_zero() {
                return Err(Error::Equation(format!(
                    "{poly} has no linear term in its trailing variable {}",
                    ring.name(t)
                )));
            }
            let wt = ring.int_weight(&ut.0);
            for (m, _) in poly.terms() {
                if *m != ut && m.0[t] > 0 {
                    return Err(Error::Equation(format!(
                        "trailing variable {} occurs in the term {} of {poly}",
                        ring.name(t),
                        ring.format_monomial(m)
                    )));
                }
                if *m != ut && ring.int_weight(&m.0) > wt {
                    return Err(Error::Equation(format!(
                        "term {} of {poly} is heavier than its trailing variable {}",
                        ring.format_monomial(m),
                        ring.name(t)
                    )));
                }
            }
        }
        Ok(DeformedEquation {
            poly,
            kind,
            head,
            head_poly,
            head_weight,
        })
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn kind(&self) -> &EquationKind {
        &self.kind
    }

    pub fn head(&self) -> &Binomial {
        &self.head
    }

    /// The initial binomial as it appears in the equation.
    pub fn head_poly(&self) -> &Polynomial {
        &self.head_poly
    }

    pub fn tail(&self) -> Polynomial {
        &self.poly - &self.head_poly
    }

    pub fn head_weight(&self) -> &Value {
        &self.head_weight
    }

    /// The trailing variable, when it belongs to the ring.
    pub fn trailing(&self) -> Option<usize> {
        match self.kind {
            EquationKind::Fi { trailing } => trailing,
            EquationKind::Fq => None,
        }
    }
}

/// Result of a successful certification.
#[derive(Clone, Debug)]
pub struct Certificate {
    standard_basis: Vec<Polynomial>,
    head_basis: Vec<Polynomial>,
    dimension: usize,
    lattice_rank: usize,
    rational_rank: usize,
    redundant_heads: Vec<usize>,
    equations_are_standard_basis: bool,
    sb_work: Vec<WPoly>,
    head_leads: Vec<Monomial>,
}

impl Certificate {
    /// A standard basis of the ideal for the local order.
    pub fn standard_basis(&self) -> &[Polynomial] {
        &self.standard_basis
    }

    /// Reduced Gröbner basis of the ideal of the heads.
    pub fn head_basis(&self) -> &[Polynomial] {
        &self.head_basis
    }

    /// Krull dimension of the quotient by the initial ideal.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice_rank
    }

    pub fn rational_rank(&self) -> usize {
        self.rational_rank
    }

    /// Equations whose head lies in the ideal of lighter heads.
    pub fn redundant_heads(&self) -> &[usize] {
        &self.redundant_heads
    }

    /// Whether the input equations are already a standard basis.
    pub fn equations_are_standard_basis(&self) -> bool {
        self.equations_are_standard_basis
    }

    /// Leading monomials of the heads' Gröbner basis: the staircase of the
    /// graded algebra.
    pub fn head_leads(&self) -> &[Monomial] {
        &self.head_leads
    }
}

/// A weighted ring with overweight equations.
#[derive(Clone, Debug)]
pub struct DeformationSystem {
    ring: Arc<WeightedRing>,
    equations: Vec<DeformedEquation>,
    certificate: Option<Arc<Certificate>>,
}

impl DeformationSystem {
    pub fn new(ring: &Arc<WeightedRing>, equations: Vec<DeformedEquation>) -> Result<Self> {
        for e in &equations {
            if !ring.same_layout(e.poly().ring()) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(DeformationSystem {
            ring: ring.clone(),
            equations,
            certificate: None,
        })
    }

    /// Builds the equations from polynomials and kinds.
    pub fn from_polynomials(
        ring: &Arc<WeightedRing>,
        polys: Vec<(Polynomial, EquationKind)>,
    ) -> Result<Self> {
        let eqs = polys
            .into_iter()
            .map(|(p, k)| DeformedEquation::new(p, k))
            .collect::<Result<Vec<_>>>()?;
        DeformationSystem::new(ring, eqs)
    }

    pub fn ring(&self) -> &Arc<WeightedRing> {
        &self.ring
    }

    pub fn equations(&self) -> &[DeformedEquation] {
        &self.equations
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.equations.iter().map(|e| e.poly().clone()).collect()
    }

    pub fn heads(&self) -> BinomialIdeal {
        BinomialIdeal {
            ring: self.ring.clone(),
            binomials: self.equations.iter().map(|e| e.head().clone()).collect(),
        }
    }

    pub fn is_certified(&self) -> bool {
        self.certificate.is_some()
    }

    pub fn certificate(&self) -> Result<&Certificate> {
        self.certificate.as_deref().ok_or(Error::Uncertified)
    }

    /// Certifies and returns the system with its certificate attached.
    pub fn certify(mut self) -> Result<Self> {
        if self.certificate.is_none() {
            self.certificate = Some(Arc::new(certify_overweight(&self)?));
        }
        Ok(self)
    }
}

/// Largest set of variables containing no leading monomial's support.
fn monomial_dimension(n: usize, leads: &[Monomial]) -> usize {
    let supports: Vec<u64> = leads
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    assert!(n < 64);
    let mut best = 0;
    for s in 0u64..(1 << n) {
        let size = s.count_ones() as usize;
        if size > best && supports.iter().all(|&sup| sup & !s != 0) {
            best = size;
        }
    }
    best
}

fn head_groebner(ring: &Arc<WeightedRing>, polys: &[Polynomial], order: &MonomialOrder) -> (Order, Vec<WPoly>) {
    let ord = Order::new(ring, order);
    let work = polys.iter().map(|p| groebner::to_work(p, &ord)).collect();
    let gb = groebner::buchberger(&ord, ring.field(), work);
    (ord, gb)
}

fn lifted_standard_basis(system: &DeformationSystem, hord: &Order) -> Vec<WPoly> {
    let ring = system.ring();
    let field = ring.field();
    let heads: Vec<WPoly> = system
        .equations
        .iter()
        .map(|e| groebner::to_work(e.head_poly(), hord))
        .collect();
    let lord = Order::new(ring, &MonomialOrder::Local);
    groebner::buchberger_tracked(hord, ring, &heads)
        .into_iter()
        .map(|(g, cof)| {
            let lift = cof
                .iter()
                .zip(&system.equations)
                .fold(Polynomial::zero(ring), |acc, (a, e)| &acc + &(a * e.poly()));
            let mut w = groebner::to_work(&lift, &lord);
            debug_assert_eq!(w.last().map(|t| &t.0), g.last().map(|t| &t.0));
            groebner::make_monic(&mut w, field);
            w
        })
        .collect()
}

/// Checks that the heads generate a prime binomial ideal presenting the
/// graded algebra, computes a local standard basis of the equations, and
/// verifies that its initial forms lie in the ideal of the heads.
pub fn certify_overweight(system: &DeformationSystem) -> Result<Certificate> {
    let ring = system.ring();
    let n = ring.nvars();
    let field = ring.field();
    let heads = system.heads();

    // lattice of the heads against the full relation lattice of the weights
    let lattice_rank = heads.lattice_rank();
    let rational_rank = ring.rational_rank();
    if !heads.is_saturated() {
        return Err(Error::Certification(
            "the head exponent vectors span a non-saturated lattice".into(),
        ));
    }
    if lattice_rank != n - rational_rank {
        return Err(Error::Certification(format!(
            "the heads span a relation lattice of rank {lattice_rank}, the weights need {}",
            n - rational_rank
        )));
    }
    heads.check_character()?;

    let head_polys = heads.polynomials();
    let (hord, hgb) = head_groebner(ring, &head_polys, &MonomialOrder::WeightLex);

    // the head ideal is saturated by every variable, hence the lattice ideal
    for v in 0..n {
        let (rord, rgb) = head_groebner(ring, &head_polys, &MonomialOrder::WeightRevlex { last: v });
        for g in &rgb {
            if g.iter().all(|(m, _)| m.0[v] > 0) {
                let q: WPoly = g
                    .iter()
                    .map(|(m, c)| {
                        let mut e = m.clone();
                        e.0[v] -= 1;
                        (e, c.clone())
                    })
                    .collect();
                let r = groebner::reduce_full(&rord, field, q.clone(), &rgb);
                if !r.is_empty() {
                    let q = groebner::from_work(&q, ring);
                    return Err(Error::Certification(format!(
                        "the heads do not generate a prime ideal: {}*({q}) lies in it and {q} does not",
                        ring.name(v),
                    )));
                }
            }
        }
    }

    let head_leads: Vec<Monomial> = hgb.iter().map(|g| g.last().unwrap().0.clone()).collect();
    let dimension = monomial_dimension(n, &head_leads);
    if dimension != n - lattice_rank {
        return Err(Error::Certification(format!(
            "the initial ideal has dimension {dimension}, expected {}",
            n - lattice_rank
        )));
    }

    // redundant heads, lightest first
    let mut order: Vec<usize> = (0..head_polys.len()).collect();
    order.sort_by(|&a, &b| {
        system.equations[a]
            .head_weight()
            .try_cmp(system.equations[b].head_weight())
            .unwrap()
            .then(a.cmp(&b))
    });
    let mut kept: Vec<Polynomial> = Vec::new();
    let mut redundant_heads = Vec::new();
    for &i in &order {
        if !kept.is_empty() {
            let (o, gb) = head_groebner(ring, &kept, &MonomialOrder::WeightLex);
            let r = groebner::reduce_full(&o, field, groebner::to_work(&head_polys[i], &o), &gb);
            if r.is_empty() {
                redundant_heads.push(i);
                continue;
            }
        }
        kept.push(head_polys[i].clone());
    }
    redundant_heads.sort_unstable();

    let polys = system.polynomials();
    let homogeneous = system.equations.iter().all(|e| e.tail().is_zero());
    let sb_work = if homogeneous || polys.len() == lattice_rank {
        // The initial ideal contains the prime ideal of the heads and has
        // the same dimension, so the two agree and lifting a Gröbner basis
        // of the heads gives a standard basis.
        lifted_standard_basis(system, &hord)
    } else {
        let sb = groebner::local_standard_basis(ring, &polys);
        for g in &sb {
            let gp = groebner::from_work(g, ring);
            let init = gp.initial_form()?;
            let r = groebner::reduce_full(&hord, field, groebner::to_work(&init, &hord), &hgb);
            if !r.is_empty() {
                return Err(Error::InitialIdealMismatch {
                    element: gp.to_string(),
                    remainder: groebner::from_work(&r, ring).to_string(),
                });
            }
        }
        sb
    };
    let standard_basis: Vec<Polynomial> = sb_work.iter().map(|g| groebner::from_work(g, ring)).collect();
    let input_leads: Vec<Monomial> = polys
        .iter()
        .filter_map(|p| groebner::leading_monomial(p, &MonomialOrder::Local))
        .collect();
    let equations_are_standard_basis = sb_work
        .iter()
        .all(|g| input_leads.iter().any(|l| l.divides(&g.last().unwrap().0)));

    Ok(Certificate {
        standard_basis,
        head_basis: hgb.iter().map(|g| groebner::from_work(g, ring)).collect(),
        dimension,
        lattice_rank,
        rational_rank,
        redundant_heads,
        equations_are_standard_basis,
        sb_work,
        head_leads,
    })
}

fn check_same_ring(f: &Polynomial, system: &DeformationSystem) -> Result<()> {
    if !system.ring().same_layout(f.ring()) {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// Mora normal form: zero iff `f` lies in the ideal of the local ring.
pub(crate) fn mora_remainder(f: &Polynomial, system: &DeformationSystem) -> Result<Polynomial> {
    check_same_ring(f, system)?;
    let cert = system.certificate()?;
    let ring = system.ring();
    let ord = Order::new(ring, &MonomialOrder::Local);
    let h = groebner::mora_normal_form(&ord, ring.field(), groebner::to_work(f, &ord), &cert.sb_work);
    Ok(groebner::from_work(&h, ring))
}

/// Remainder of `f` keeping terms of weight at most `cap`, together with a
/// flag telling whether nothing was discarded. Rank-1 weights only.
pub fn normal_form_capped(
    f: &Polynomial,
    system: &DeformationSystem,
    cap: &Value,
) -> Result<(Polynomial, bool)> {
    check_same_ring(f, system)?;
    let cert = system.certificate()?;
    let ring = system.ring();
    if ring.rank() != 1 {
        return Err(Error::RankOneRequired(ring.rank()));
    }
    let scale = BigRational::from_integer(ring.weight_scale().clone());
    let cap_int = (&cap.coords()[0] * &scale)
        .floor()
        .to_integer()
        .to_i128()
        .ok_or_else(|| Error::Precision("weight cap too large".into()))?;
    let keep = |m: &Monomial| ring.int_weight(&m.0)[0] <= cap_int;
    let ord = Order::new(ring, &MonomialOrder::Local);
    let f = f.rebase(ring)?;
    let (r, exact) = groebner::truncated_normal_form(
        &ord,
        ring.field(),
        groebner::to_work(&f, &ord),
        &cert.sb_work,
        &keep,
    );
    Ok((groebner::from_work(&r, ring), exact))
}

/// Canonical remainder of `f` on the standard monomials, carried up to the
/// largest of `f`'s term weights and its value, so that the first term
/// realizes the value. For weights of rank above one this is the Mora
/// remainder instead.
pub fn normal_form(f: &Polynomial, system: &DeformationSystem) -> Result<Polynomial> {
    let h = mora_remainder(f, system)?;
    if h.is_zero() {
        return Ok(h);
    }
    let ring = system.ring();
    if ring.rank() != 1 {
        return Ok(h);
    }
    let value = match h.weight() {
        Valuation::Finite(v) => v,
        Valuation::Infinite => unreachable!(),
    };
    let top = f
        .terms()
        .map(|(m, _)| ring.monomial_weight(m))
        .fold(value, |a, b| if b > a { b } else { a });
    Ok(normal_form_capped(f, system, &top)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Field;
    use crate::semigroup::relation_lattice;

    fn ring(w: &[(&str, i64)]) -> Arc<WeightedRing> {
        let v: Vec<(&str, Value)> = w.iter().map(|(n, x)| (*n, Value::int(*x))).collect();
        WeightedRing::with_weights(Field::Rational, &v).unwrap()
    }

    fn s7() -> DeformationSystem {
        let r = ring(&[("x", 4), ("y", 6), ("u", 15)]);
        let (x, y, u) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1), Polynomial::var(&r, 2));
        DeformationSystem::from_polynomials(
            &r,
            vec![
                (&(&y.pow(2) - &x.pow(3)) - &u, EquationKind::Fi { trailing: Some(2) }),
                (&u.pow(2) - &(&x.pow(6) * &y), EquationKind::Fq),
            ],
        )
        .unwrap()
    }

    #[test]
    fn binomials_from_lattice() {
        let r = ring(&[("x", 4), ("y", 6), ("u", 15)]);
        let basis = RelationBasis::new(vec![vec![3, -2, 0], vec![6, 1, -2]]);
        let ideal = binomials_from_relations(&r, &basis, &[Coeff::one(), Coeff::one()]).unwrap();
        let p: Vec<String> = ideal.polynomials().iter().map(|p| p.to_string()).collect();
        assert_eq!(p, vec!["-y^2 + x^3", "-u^2 + x^6*y"]);
        let r2 = ring(&[("x", 2), ("y", 4)]);
        let b = relation_lattice(&r2.weights()).unwrap();
        let i2 = binomials_from_relations(&r2, &b, &[BigRational::from_integer(5.into())]).unwrap();
        assert_eq!(i2.binomials()[0].lambda, BigRational::from_integer(5.into()));
        assert_eq!(i2.binomials()[0].m, Monomial(vec![2, 0]));
        let empty = binomials_from_relations(&r2, &RelationBasis::new(vec![]), &[]).unwrap();
        assert!(empty.binomials().is_empty());
    }

    #[test]
    fn inconsistent_character() {
        let r = ring(&[("x", 1), ("y", 1)]);
        let b1 = Binomial::oriented(Monomial(vec![1, 0]), Monomial(vec![0, 1]), Coeff::one(), &r).unwrap();
        let b2 = Binomial::oriented(
            Monomial(vec![2, 0]),
            Monomial(vec![0, 2]),
            BigRational::from_integer(2.into()),
            &r,
        )
        .unwrap();
        let ideal = BinomialIdeal::new(&r, vec![b1, b2]).unwrap();
        assert!(matches!(
            ideal.check_character(),
            Err(Error::InconsistentCharacter { .. })
        ));
    }

    #[test]
    fn s7_certifies() {
        let sys = s7().certify().unwrap();
        let c = sys.certificate().unwrap();
        assert_eq!(c.dimension(), 1);
        assert_eq!(c.lattice_rank(), 2);
        assert_eq!(c.rational_rank(), 1);
        assert!(c.redundant_heads().is_empty());
    }

    #[test]
    fn heads_alone_certify() {
        let r = ring(&[("x", 4), ("y", 6), ("u", 15)]);
        let (x, y, u) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1), Polynomial::var(&r, 2));
        let sys = DeformationSystem::from_polynomials(
            &r,
            vec![
                (&y.pow(2) - &x.pow(3), EquationKind::Fq),
                (&u.pow(2) - &(&x.pow(6) * &y), EquationKind::Fq),
            ],
        )
        .unwrap()
        .certify()
        .unwrap();
        // the reduced basis of the heads has y^5 - u^2 besides x^3 - y^2
        assert!(!sys.certificate().unwrap().equations_are_standard_basis());
        assert_eq!(sys.certificate().unwrap().head_basis().len(), 2);
    }

    #[test]
    fn tail_weight_violation() {
        let r = ring(&[("x", 4), ("y", 6)]);
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let e = DeformedEquation::new(&(&y.pow(2) - &x.pow(3)) - &x, EquationKind::Fq).unwrap_err();
        assert_eq!(
            e,
            Error::TailWeight {
                term: "x".into(),
                term_weight: "4".into(),
                head_weight: "12".into()
            }
        );
    }

    #[test]
    fn non_prime_heads_rejected() {
        let r = ring(&[("x", 3), ("y", 4), ("z", 5)]);
        let (x, y, z) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1), Polynomial::var(&r, 2));
        let sys = DeformationSystem::from_polynomials(
            &r,
            vec![
                (&(&x * &z) - &y.pow(2), EquationKind::Fq),
                (&(&x.pow(2) * &y) - &z.pow(2), EquationKind::Fq),
            ],
        )
        .unwrap();
        assert!(matches!(certify_overweight(&sys), Err(Error::Certification(_))));
        let full = DeformationSystem::from_polynomials(
            &r,
            vec![
                (&(&x * &z) - &y.pow(2), EquationKind::Fq),
                (&(&x.pow(2) * &y) - &z.pow(2), EquationKind::Fq),
                (&x.pow(3) - &(&y * &z), EquationKind::Fq),
            ],
        )
        .unwrap();
        let c = certify_overweight(&full).unwrap();
        assert_eq!(c.dimension(), 1);
    }

    #[test]
    fn normal_forms() {
        let sys = s7().certify().unwrap();
        let r = sys.ring().clone();
        let (x, y, u) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1), Polynomial::var(&r, 2));
        assert_eq!(normal_form(&(&y.pow(2) - &x.pow(3)), &sys).unwrap(), u);
        assert_eq!(normal_form(&x, &sys).unwrap(), x);
        assert!(normal_form(&(&u.pow(2) - &(&x.pow(6) * &y)), &sys).unwrap().is_zero());
        assert_eq!(normal_form(&x, &s7()), Err(Error::Uncertified));
    }

    #[test]
    fn mismatched_unfolding_is_reported() {
        // the three equations add up to x^2, whose initial form is no binomial
        let r = ring(&[("x", 1), ("y", 1), ("z", 1)]);
        let (x, y, z) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1), Polynomial::var(&r, 2));
        let sys = DeformationSystem::from_polynomials(
            &r,
            vec![
                (&x - &y, EquationKind::Fq),
                (&(&y - &z) + &x.pow(2), EquationKind::Fq),
                (&z - &x, EquationKind::Fq),
            ],
        )
        .unwrap();
        match certify_overweight(&sys) {
            Err(Error::InitialIdealMismatch { element, .. }) => {
                assert!(["x^2", "y^2", "z^2"].contains(&element.as_str()), "{element}")
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
