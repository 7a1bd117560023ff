//! Semigroups generated by values: relations, membership, partition counts.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice;
use crate::value::Value;

/// A basis of the integer relations between generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationBasis {
    vectors: Vec<Vec<i64>>,
}

impl RelationBasis {
    pub fn new(vectors: Vec<Vec<i64>>) -> Self {
        RelationBasis { vectors }
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Splits vector `i` into disjoint positive and negative parts `(m, n)`.
    pub fn split(&self, i: usize) -> (Vec<u32>, Vec<u32>) {
        split_vector(&self.vectors[i])
    }

    /// Whether `v` is an integer combination of the basis.
    pub fn contains(&self, v: &[i64]) -> bool {
        lattice::in_lattice(&self.vectors, v)
    }

    /// All Smith invariants equal one.
    pub fn is_saturated(&self) -> bool {
        lattice::smith_diagonal(&self.vectors).iter().all(One::is_one)
    }
}

pub fn split_vector(v: &[i64]) -> (Vec<u32>, Vec<u32>) {
    let m = v.iter().map(|&x| x.max(0) as u32).collect();
    let n = v.iter().map(|&x| (-x).max(0) as u32).collect();
    (m, n)
}

fn check_generators(gens: &[Value]) -> Result<usize> {
    let first = gens.first().ok_or(Error::EmptyValue)?;
    let rank = first.rank();
    for g in gens {
        if g.rank() != rank {
            return Err(Error::RankMismatch {
                left: rank,
                right: g.rank(),
            });
        }
        if !g.is_positive() {
            return Err(Error::NonPositiveWeight {
                name: "generator".into(),
                weight: g.to_string(),
            });
        }
    }
    Ok(rank)
}

/// A saturated basis of `{v : sum v_i gens_i = 0}`.
pub fn relation_lattice(gens: &[Value]) -> Result<RelationBasis> {
    check_generators(gens)?;
    let a = lattice::integer_weight_matrix(gens);
    Ok(RelationBasis::new(lattice::integer_kernel(&a, gens.len())))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupPresentation {
    generators: Vec<Value>,
    lattice: RelationBasis,
}

impl SemigroupPresentation {
    pub fn new(generators: Vec<Value>) -> Result<Self> {
        let lattice = relation_lattice(&generators)?;
        Ok(SemigroupPresentation {
            generators,
            lattice,
        })
    }

    pub fn from_ints(gens: &[i64]) -> Result<Self> {
        SemigroupPresentation::new(gens.iter().map(|&g| Value::int(g)).collect())
    }

    pub fn generators(&self) -> &[Value] {
        &self.generators
    }

    pub fn lattice(&self) -> &RelationBasis {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.generators[0].rank()
    }

    pub fn rational_rank(&self) -> usize {
        lattice::rational_rank(&self.generators)
    }

    /// Common denominator of the generators.
    fn scale_with(&self, extra: &[&Value]) -> BigInt {
        self.generators
            .iter()
            .chain(extra.iter().copied())
            .fold(BigInt::one(), |acc, v| acc.lcm(&v.denominator_lcm()))
    }

    fn scaled(&self, extra: &Value) -> Result<(Vec<usize>, Option<usize>)> {
        let s = BigRational::from_integer(self.scale_with(&[extra]));
        let to_usize = |q: &BigRational| -> Result<Option<usize>> {
            let v = q * &s;
            if v < BigRational::zero() {
                return Ok(None);
            }
            v.to_integer()
                .to_usize()
                .map(Some)
                .ok_or_else(|| Error::Equation("value too large for exhaustive search".into()))
        };
        let gens = self
            .generators
            .iter()
            .map(|g| to_usize(&g.coords()[0]).map(|x| x.unwrap()))
            .collect::<Result<Vec<_>>>()?;
        Ok((gens, to_usize(&extra.coords()[0])?))
    }
}

fn check_value(gamma: &Value, sg: &SemigroupPresentation) -> Result<()> {
    if gamma.rank() != sg.rank() {
        return Err(Error::RankMismatch {
            left: sg.rank(),
            right: gamma.rank(),
        });
    }
    Ok(())
}

/// Some `a` with `sum a_i gens_i = gamma`, searched exhaustively. Rank-1
/// semigroups need no cap; higher rank requires `degree_cap` on `sum a_i`.
pub fn membership(
    gamma: &Value,
    sg: &SemigroupPresentation,
    degree_cap: Option<u32>,
) -> Result<Option<Vec<u64>>> {
    check_value(gamma, sg)?;
    if gamma.is_zero() {
        return Ok(Some(vec![0; sg.generators.len()]));
    }
    if sg.rank() == 1 {
        let (gens, target) = sg.scaled(gamma)?;
        let Some(t) = target else { return Ok(None) };
        // last[v] = generator used to reach v
        let mut last: Vec<Option<usize>> = vec![None; t + 1];
        let mut reach = vec![false; t + 1];
        reach[0] = true;
        for v in 1..=t {
            for (i, &g) in gens.iter().enumerate() {
                if g <= v && reach[v - g] {
                    reach[v] = true;
                    last[v] = Some(i);
                    break;
                }
            }
        }
        if !reach[t] {
            return Ok(None);
        }
        let mut a = vec![0u64; gens.len()];
        let mut v = t;
        while v > 0 {
            let i = last[v].unwrap();
            a[i] += 1;
            v -= gens[i];
        }
        return Ok(Some(a));
    }
    let cap = degree_cap.ok_or(Error::CapRequired(sg.rank()))?;
    let mut found = None;
    enumerate_capped(&sg.generators, cap, &mut |a, v| {
        if found.is_none() && v == gamma {
            found = Some(a.to_vec());
        }
    });
    Ok(found)
}

/// Calls `f` on every exponent vector of total degree at most `cap`.
fn enumerate_capped(gens: &[Value], cap: u32, f: &mut dyn FnMut(&[u64], &Value)) {
    fn go(
        gens: &[Value],
        i: usize,
        left: u32,
        a: &mut Vec<u64>,
        acc: &Value,
        f: &mut dyn FnMut(&[u64], &Value),
    ) {
        if i == gens.len() {
            f(a, acc);
            return;
        }
        let mut cur = acc.clone();
        for k in 0..=left {
            a[i] = k as u64;
            go(gens, i + 1, left - k, a, &cur, f);
            cur = &cur + &gens[i];
        }
        a[i] = 0;
    }
    let mut a = vec![0u64; gens.len()];
    go(gens, 0, cap, &mut a, &Value::zero(gens[0].rank()), f);
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub generator: Value,
    /// A representation by the earlier generators.
    pub representation: Vec<u64>,
}

/// Generators that lie in the semigroup of their predecessors.
pub fn minimal_generators_check(
    sg: &SemigroupPresentation,
    degree_cap: Option<u32>,
) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    for i in 1..sg.generators.len() {
        let prefix = SemigroupPresentation::new(sg.generators[..i].to_vec())?;
        if let Some(rep) = membership(&sg.generators[i], &prefix, degree_cap)? {
            out.push(Violation {
                index: i,
                generator: sg.generators[i].clone(),
                representation: rep,
            });
        }
    }
    Ok(out)
}

/// Number of ways of writing `gamma` as an `N`-combination of the generators.
pub fn partition_count(
    gamma: &Value,
    sg: &SemigroupPresentation,
    degree_cap: Option<u32>,
) -> Result<BigUint> {
    check_value(gamma, sg)?;
    if sg.rank() == 1 {
        let (gens, target) = sg.scaled(gamma)?;
        let Some(t) = target else {
            return Ok(BigUint::zero());
        };
        let mut memo = HashMap::new();
        return Ok(count_ways(&gens, 0, t, &mut memo));
    }
    let cap = degree_cap.ok_or(Error::CapRequired(sg.rank()))?;
    let mut n = BigUint::zero();
    enumerate_capped(&sg.generators, cap, &mut |_, v| {
        if v == gamma {
            n += 1u32;
        }
    });
    Ok(n)
}

fn count_ways(
    gens: &[usize],
    i: usize,
    rest: usize,
    memo: &mut HashMap<(usize, usize), BigUint>,
) -> BigUint {
    if i == gens.len() {
        return if rest == 0 { BigUint::one() } else { BigUint::zero() };
    }
    if let Some(v) = memo.get(&(i, rest)) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    let mut r = rest as i64;
    while r >= 0 {
        total += count_ways(gens, i + 1, r as usize, memo);
        r -= gens[i] as i64;
    }
    memo.insert((i, rest), total.clone());
    total
}

/// Both sides of the generating-function identity, coefficientwise.
#[derive(Clone, Debug)]
pub struct EulerReport {
    pub holds: bool,
    /// `(gamma, p(gamma), product coefficient)` for every multiple of the
    /// common denominator up to the bound.
    pub coefficients: Vec<(Value, BigUint, BigUint)>,
    pub mismatches: Vec<Value>,
}

/// Compares `sum p(g) t^g` with `prod 1/(1 - t^{gamma_i})` up to `bound`.
pub fn euler_identity_check(sg: &SemigroupPresentation, bound: &Value) -> Result<EulerReport> {
    check_value(bound, sg)?;
    if sg.rank() != 1 {
        return Err(Error::RankOneRequired(sg.rank()));
    }
    let scale = sg.scale_with(&[bound]);
    let (gens, top) = sg.scaled(bound)?;
    let top = top.unwrap_or(0);
    // right side: multiply truncated geometric series
    let mut product = vec![BigUint::zero(); top + 1];
    product[0] = BigUint::one();
    for &g in &gens {
        let mut geometric = vec![BigUint::zero(); top + 1];
        let mut k = 0;
        while k <= top {
            geometric[k] = BigUint::one();
            k += g;
        }
        let mut next = vec![BigUint::zero(); top + 1];
        for (i, a) in product.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in geometric.iter().enumerate().take(top + 1 - i) {
                if !b.is_zero() {
                    next[i + j] += a * b;
                }
            }
        }
        product = next;
    }
    let mut coefficients = Vec::with_capacity(top + 1);
    let mut mismatches = Vec::new();
    for (k, rhs) in product.into_iter().enumerate() {
        let gamma = Value::scalar(BigRational::new(BigInt::from(k), scale.clone()));
        let lhs = partition_count(&gamma, sg, None)?;
        if lhs != rhs {
            mismatches.push(gamma.clone());
        }
        coefficients.push((gamma, lhs, rhs));
    }
    Ok(EulerReport {
        holds: mismatches.is_empty(),
        coefficients,
        mismatches,
    })
}

/// Semigroup elements `<= bound`, ascending. Rank > 1 needs a degree cap.
pub fn elements_up_to(
    sg: &SemigroupPresentation,
    bound: &Value,
    degree_cap: Option<u32>,
) -> Result<Vec<Value>> {
    check_value(bound, sg)?;
    if sg.rank() == 1 {
        let scale = sg.scale_with(&[bound]);
        let (gens, top) = sg.scaled(bound)?;
        let Some(top) = top else { return Ok(Vec::new()) };
        let mut reach = vec![false; top + 1];
        reach[0] = true;
        for v in 1..=top {
            reach[v] = gens.iter().any(|&g| g <= v && reach[v - g]);
        }
        return Ok(reach
            .iter()
            .enumerate()
            .filter(|(_, r)| **r)
            .map(|(k, _)| Value::scalar(BigRational::new(BigInt::from(k), scale.clone())))
            .collect());
    }
    let cap = degree_cap.ok_or(Error::CapRequired(sg.rank()))?;
    let mut set: BTreeMap<Vec<BigRational>, Value> = BTreeMap::new();
    enumerate_capped(&sg.generators, cap, &mut |_, v| {
        if v <= bound {
            set.insert(v.coords().to_vec(), v.clone());
        }
    });
    Ok(set.into_values().collect())
}
