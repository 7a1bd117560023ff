//! Plane branches given by their generators and the relations among them.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::deformation::{DeformationSystem, EquationKind};
use crate::error::{Error, Result};
use crate::parser::parse_poly;
use crate::poly::Polynomial;
use crate::ring::{Coeff, Field, Monomial, Variable, WeightedRing};
use crate::value::{Valuation, Value};

use super::initial::InitialSet;
use super::truncation::{semivaluation_value, truncate, TruncationIdeal};

/// Generators `1 = γ_0 < γ_1 < ... < γ_g` with `n_i γ_i = Σ_{q<i} t^{(i)}_q γ_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchData {
    pub field: Field,
    pub gammas: Vec<BigRational>,
    pub n: Vec<u32>,
    pub digits: Vec<Vec<u32>>,
    /// Optional higher-order terms of each equation, as expressions in
    /// `x, y, u2, ...`; empty means none.
    pub tails: Vec<String>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn var_names(g: usize) -> Vec<String> {
    (0..=g)
        .map(|k| match k {
            0 => "x".to_string(),
            1 => "y".to_string(),
            k => format!("u{k}"),
        })
        .collect()
}

impl BranchData {
    pub fn genus(&self) -> usize {
        self.n.len()
    }

    pub fn validate(&self) -> Result<()> {
        let g = self.genus();
        let bad = |m: String| Err(Error::Branch(m));
        if g == 0 {
            return bad("at least one relation is needed".into());
        }
        if self.gammas.len() != g + 1 {
            return bad(format!("{} generators given for {g} relations", self.gammas.len()));
        }
        if self.digits.len() != g {
            return bad(format!("{} digit rows given for {g} relations", self.digits.len()));
        }
        if !self.tails.is_empty() && self.tails.len() != g {
            return bad(format!("{} tails given for {g} relations", self.tails.len()));
        }
        if self.gammas[0] != q(1) {
            return bad(format!("γ_0 = 1 (got {})", self.gammas[0]));
        }
        for i in 1..=g {
            if self.gammas[i] <= self.gammas[i - 1] {
                return bad(format!(
                    "γ_{i} > γ_{} ({} is not above {})",
                    i - 1,
                    self.gammas[i],
                    self.gammas[i - 1]
                ));
            }
        }
        let mut den = BigInt::one();
        for i in 1..=g {
            let next = den.lcm(self.gammas[i].denom());
            let index = (&next / &den).to_u32().unwrap_or(0);
            den = next;
            let ni = self.n[i - 1];
            if ni < 2 || index != ni {
                return bad(format!(
                    "n_i = [Φ_i : Φ_(i-1)] at i = {i}: the index is {index}, n_{i} = {ni}"
                ));
            }
            let t = &self.digits[i - 1];
            if t.len() != i {
                return bad(format!("relation {i} needs {i} digits, got {}", t.len()));
            }
            for qd in 1..i {
                if t[qd] >= self.n[qd - 1] {
                    return bad(format!(
                        "0 <= t_q < n_q in relation {i}: t_{qd} = {} but n_{qd} = {}",
                        t[qd],
                        self.n[qd - 1]
                    ));
                }
            }
            let lhs = q(ni as i64) * &self.gammas[i];
            let rhs: BigRational = t
                .iter()
                .zip(&self.gammas)
                .map(|(&tq, gq)| q(tq as i64) * gq)
                .sum();
            if lhs != rhs {
                return bad(format!(
                    "n_i γ_i = Σ t_q γ_q in relation {i}: {lhs} against {rhs}"
                ));
            }
            if i < g && self.gammas[i + 1] <= lhs {
                return bad(format!(
                    "γ_{{i+1}} > n_i γ_i at i = {i}: γ_{} = {} is not above {lhs}",
                    i + 1,
                    self.gammas[i + 1]
                ));
            }
        }
        Ok(())
    }

    /// The tail polynomials, checked against the weight bounds.
    pub fn tail_polynomials(&self, ring: &Arc<WeightedRing>) -> Result<Vec<Polynomial>> {
        let g = self.genus();
        let mut tails = Vec::with_capacity(g);
        for i in 1..=g {
            let text = self.tails.get(i - 1).map(String::as_str).unwrap_or("");
            let tail = if text.trim().is_empty() {
                Polynomial::zero(ring)
            } else {
                parse_poly(text, ring)?
            };
            let head = &self.gammas[i] * q(self.n[i - 1] as i64);
            for (m, _) in tail.terms() {
                if let Some(v) = m.support().find(|&v| v > i) {
                    return Err(Error::Branch(format!(
                        "tail {i} uses only x, y, u2, ..., u_{i}: found {}",
                        ring.name(v)
                    )));
                }
                let w = ring.monomial_weight(m);
                let w = w.as_scalar().expect("rank one");
                let upper_ok = i == g || *w < self.gammas[i + 1];
                if *w <= head || !upper_ok {
                    return Err(Error::Branch(format!(
                        "tail terms of weight between n_i γ_i and γ_(i+1): {} has weight {w} in tail {i}",
                        ring.format_monomial(m)
                    )));
                }
            }
            tails.push(tail);
        }
        Ok(tails)
    }

    /// The equations `u_i^{n_i} - x^{t_0} y^{t_1} ... - g_i - u_{i+1}`, the last
    /// one with an open trailing variable. Not certified.
    pub fn system(&self) -> Result<DeformationSystem> {
        self.validate()?;
        let g = self.genus();
        let ring = self.ring()?;
        let one = Coeff::one();
        let tails = self.tail_polynomials(&ring)?;
        let nv = g + 1;
        let mut eqs = Vec::with_capacity(g);
        for i in 1..=g {
            let ui = Monomial::var(nv, i, self.n[i - 1]);
            let mut rhs = vec![0u32; nv];
            rhs[..i].copy_from_slice(&self.digits[i - 1]);
            let mut f = &Polynomial::term(&ring, ui, &one)
                - &Polynomial::term(&ring, Monomial(rhs), &one);
            f = &f - &tails[i - 1];
            let kind = if i < g {
                f = &f - &Polynomial::var(&ring, i + 1);
                EquationKind::Fi { trailing: Some(i + 1) }
            } else {
                EquationKind::Fi { trailing: None }
            };
            eqs.push((f, kind));
        }
        DeformationSystem::from_polynomials(&ring, eqs)
    }

    /// Weighted ring `x, y, u2, ..., u_g` with weights `γ_0, ..., γ_g`.
    pub fn ring(&self) -> Result<Arc<WeightedRing>> {
        let vars = var_names(self.genus())
            .into_iter()
            .zip(&self.gammas)
            .map(|(name, w)| Variable {
                name,
                weight: Value::scalar(w.clone()),
            })
            .collect();
        WeightedRing::new(self.field.clone(), vars)
    }

    /// Common denominator of the generators.
    pub fn scale(&self) -> BigInt {
        self.gammas
            .iter()
            .fold(BigInt::one(), |acc, g| acc.lcm(g.denom()))
    }

    /// Generators multiplied by the common denominator.
    pub fn scaled_generators(&self) -> Vec<i64> {
        let s = BigRational::from_integer(self.scale());
        self.gammas
            .iter()
            .map(|g| (g * &s).to_integer().to_i64().expect("generator overflow"))
            .collect()
    }
}

/// The branch as a deformation system, with its key polynomials.
#[derive(Clone, Debug)]
pub struct BranchSystem {
    data: BranchData,
    system: DeformationSystem,
    tails: Vec<Polynomial>,
    key_polys: Vec<Polynomial>,
    truncations: Vec<TruncationIdeal>,
}

/// How much `x`-adic precision composed values may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    /// Start from a bound derived from the degrees and double as needed.
    Auto,
    Fixed(u32),
}

/// `h = p^n · h'` with `p` not dividing `h'`, and `γ` the value of `h'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposedValue {
    pub n: u32,
    pub gamma: Value,
    pub cofactor: Polynomial,
    pub precision: u32,
}

const MAX_PRECISION: u32 = 1 << 14;

impl BranchSystem {
    pub fn new(data: BranchData) -> Result<Self> {
        let system = data.system()?.certify()?;
        let g = data.genus();
        let ring = system.ring().clone();
        let nv = g + 1;
        let tails = data.tail_polynomials(&ring)?;

        // key polynomials in x, y
        let mut key_polys: Vec<Polynomial> = Vec::with_capacity(g);
        let lift = |p: &Polynomial, keys: &[Polynomial]| -> Result<Polynomial> {
            let mut p = p.clone();
            for k in (2..nv).rev() {
                if p.uses_var(k) {
                    p = p.substitute(k, &keys[k - 2])?;
                }
            }
            Ok(p)
        };
        for (i, eq) in system.equations().iter().enumerate() {
            let f = if i + 1 < g {
                eq.poly() + &Polynomial::var(&ring, i + 2)
            } else {
                eq.poly().clone()
            };
            key_polys.push(lift(&f, &key_polys)?);
        }
        let base = [0, 1];
        let weights = ring.weights();
        let mut truncations = Vec::with_capacity(g);
        for i in 1..=g {
            let set = InitialSet::new(0..=i, &weights)?;
            truncations.push(truncate(&system, &set, &base)?);
        }
        Ok(BranchSystem {
            data,
            system,
            tails,
            key_polys,
            truncations,
        })
    }

    pub fn data(&self) -> &BranchData {
        &self.data
    }

    pub fn ring(&self) -> &Arc<WeightedRing> {
        self.system.ring()
    }

    pub fn system(&self) -> &DeformationSystem {
        &self.system
    }

    pub fn genus(&self) -> usize {
        self.data.genus()
    }

    pub fn tails(&self) -> &[Polynomial] {
        &self.tails
    }

    /// `p_1, ..., p_g` as polynomials in `x, y`.
    pub fn key_polynomials(&self) -> &[Polynomial] {
        &self.key_polys
    }

    /// Orders of the key polynomials.
    pub fn betas(&self) -> Vec<u32> {
        self.key_polys
            .iter()
            .map(|p| p.order().expect("key polynomials are nonzero"))
            .collect()
    }

    /// Level `i` keeps `x, y, u2, ..., u_i`.
    pub fn level(&self, i: usize) -> Result<&TruncationIdeal> {
        if i == 0 || i > self.genus() {
            return Err(Error::Truncation(format!(
                "levels run from 1 to {}, got {i}",
                self.genus()
            )));
        }
        Ok(&self.truncations[i - 1])
    }

    pub fn levels(&self) -> &[TruncationIdeal] {
        &self.truncations
    }

    pub fn semivaluation(&self, h: &Polynomial, level: usize) -> Result<Valuation> {
        Ok(semivaluation_value(h, self.level(level)?)?.value)
    }

    /// Splits off the largest power of `p_level` from `h` (a polynomial in
    /// `x, y`) and values the cofactor at that level.
    pub fn composed_value(&self, h: &Polynomial, level: usize, precision: Precision) -> Result<ComposedValue> {
        let trunc = self.level(level)?;
        if h.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if let Some(v) = h.support().into_iter().find(|&v| v > 1) {
            return Err(Error::Branch(format!(
                "composed values take polynomials in x and y, found {}",
                self.ring().name(v)
            )));
        }
        let p = &self.key_polys[level - 1];
        let d = p.degree_in(1);
        let mut t = match precision {
            Precision::Fixed(t) => t,
            Precision::Auto => 2 * d * h.degree_in(0).max(1),
        };
        loop {
            match split_power(h, p, t) {
                Some((n, cofactor)) => {
                    let gamma = match semivaluation_value(&cofactor, trunc)?.value {
                        Valuation::Finite(v) => v,
                        Valuation::Infinite => {
                            return Err(Error::Branch(format!(
                                "cofactor {cofactor} has infinite value at level {level}"
                            )))
                        }
                    };
                    return Ok(ComposedValue {
                        n,
                        gamma,
                        cofactor,
                        precision: t,
                    });
                }
                None => match precision {
                    Precision::Fixed(_) => {
                        return Err(Error::Precision(format!(
                            "divisibility by p_{level} is undecided modulo x^{t}; raise T"
                        )))
                    }
                    Precision::Auto if t >= MAX_PRECISION => {
                        return Err(Error::Precision(format!(
                            "divisibility by p_{level} is undecided modulo x^{t}"
                        )))
                    }
                    Precision::Auto => t *= 2,
                },
            }
        }
    }
}

/// Polynomial in `y` with coefficients in `k[x]`, truncated at `x^t`.
type Tower = BTreeMap<u32, BTreeMap<u32, Coeff>>;

fn tower(p: &Polynomial) -> Tower {
    let mut out: Tower = BTreeMap::new();
    for (m, c) in p.terms() {
        out.entry(m.0[1]).or_default().insert(m.0[0], c.clone());
    }
    out
}

fn untower(t: &Tower, ring: &Arc<WeightedRing>) -> Polynomial {
    let n = ring.nvars();
    let terms: BTreeMap<Monomial, Coeff> = t
        .iter()
        .flat_map(|(&ye, row)| {
            row.iter().map(move |(&xe, c)| {
                let mut e = vec![0u32; n];
                e[0] = xe;
                e[1] = ye;
                (Monomial(e), c.clone())
            })
        })
        .collect();
    Polynomial::from_raw(ring, terms)
}

/// Division by a polynomial monic in `y`, modulo `x^t`. Returns the quotient,
/// the remainder and whether any term had to be dropped.
fn divide(h: &Tower, p: &Tower, t: u32, field: &Field) -> (Tower, Tower, bool) {
    let d = *p.keys().next_back().expect("nonzero divisor");
    let mut dropped = false;
    let mut r: Tower = BTreeMap::new();
    for (&ye, row) in h {
        for (&xe, c) in row {
            if xe < t {
                r.entry(ye).or_default().insert(xe, c.clone());
            } else {
                dropped = true;
            }
        }
    }
    let mut quo: Tower = BTreeMap::new();
    while let Some((&ye, _)) = r.iter().next_back() {
        if ye < d {
            break;
        }
        let lc = r.remove(&ye).expect("present");
        let shift = ye - d;
        let qrow = quo.entry(shift).or_default();
        for (xe, c) in &lc {
            qrow.insert(*xe, c.clone());
        }
        for (&pe, prow) in p {
            if pe == d {
                continue;
            }
            for (&px, pc) in prow {
                for (&lx, lcoef) in &lc {
                    let xe = px + lx;
                    if xe >= t {
                        dropped = true;
                        continue;
                    }
                    let row = r.entry(shift + pe).or_default();
                    let cur = row.remove(&xe).unwrap_or_else(Coeff::zero);
                    let next = field.sub(&cur, &field.mul(pc, lcoef));
                    if !next.is_zero() {
                        row.insert(xe, next);
                    }
                }
            }
        }
        r.retain(|_, row| !row.is_empty());
    }
    (quo, r, dropped)
}

/// Multiplicity of `p` in `h` and the cofactor, or `None` when the
/// precision cannot decide.
fn split_power(h: &Polynomial, p: &Polynomial, t: u32) -> Option<(u32, Polynomial)> {
    let ring = h.ring();
    let field = ring.field();
    let pt = tower(p);
    let mut cur = tower(h);
    let mut n = 0;
    loop {
        let (quo, rem, dropped) = divide(&cur, &pt, t, field);
        if !rem.is_empty() {
            return Some((n, untower(&cur, ring)));
        }
        if dropped {
            return None;
        }
        n += 1;
        cur = quo;
    }
}
