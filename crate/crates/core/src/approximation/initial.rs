//! Initial index sets and chains of them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::value::Value;

/// A set of generator indices closed downward in the order of the
/// generators' values (lexicographically, level by level).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InitialSet {
    indices: BTreeSet<usize>,
}

impl InitialSet {
    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.indices
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.indices.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    /// Checks `indices` is initial for `weights`.
    pub fn new(indices: impl IntoIterator<Item = usize>, weights: &[Value]) -> Result<Self> {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        let closed = initial_closure(&set, weights)?;
        if closed.indices != set {
            let missing: Vec<usize> = closed.indices.difference(&set).copied().collect();
            return Err(Error::InitialSet(format!(
                "{:?} is not initial; its closure also needs {:?}",
                set, missing
            )));
        }
        Ok(closed)
    }
}

fn key_cmp(a: &(usize, Value), b: &(usize, Value)) -> Ordering {
    a.1.partial_cmp(&b.1)
        .expect("uniform rank")
        .then(a.0.cmp(&b.0))
}

fn check(c: &BTreeSet<usize>, weights: &[Value]) -> Result<usize> {
    let rank = weights.first().map(Value::rank).ok_or_else(|| Error::InitialSet("no generators".into()))?;
    if let Some(w) = weights.iter().find(|w| w.rank() != rank) {
        return Err(Error::RankMismatch {
            left: rank,
            right: w.rank(),
        });
    }
    if let Some(i) = c.iter().find(|&&i| i >= weights.len()) {
        return Err(Error::InitialSet(format!(
            "index {i} out of range for {} generators",
            weights.len()
        )));
    }
    Ok(rank)
}

/// Elements are `(index, value)`; returns the closed subset of indices.
fn closure_rec(c: &BTreeSet<usize>, elems: &[(usize, Value)], rank: usize) -> BTreeSet<usize> {
    if c.is_empty() {
        return BTreeSet::new();
    }
    if rank == 1 {
        let top = elems
            .iter()
            .filter(|e| c.contains(&e.0))
            .max_by(|a, b| key_cmp(a, b))
            .expect("nonempty")
            .clone();
        return elems
            .iter()
            .filter(|e| key_cmp(e, &top) != Ordering::Greater)
            .map(|e| e.0)
            .collect();
    }
    let (proj, fibers) = project(elems, rank);
    let c1: BTreeSet<usize> = fiber_ids(c, &fibers);
    let closed = closure_rec(&c1, &proj, rank - 1);
    let mut out = BTreeSet::new();
    for f in closed {
        let fiber = &fibers[f];
        let hit: Vec<&(usize, Value)> = fiber.iter().filter(|e| c.contains(&e.0)).collect();
        match hit.last() {
            Some(top) => out.extend(
                fiber
                    .iter()
                    .filter(|e| key_cmp(e, top) != Ordering::Greater)
                    .map(|e| e.0),
            ),
            None => {
                out.insert(fiber[0].0);
            }
        }
    }
    out
}

type Fibers = Vec<Vec<(usize, Value)>>;

/// Drops the last coordinate. Projected elements are numbered by fiber.
fn project(elems: &[(usize, Value)], rank: usize) -> (Vec<(usize, Value)>, Fibers) {
    let mut groups: BTreeMap<Vec<BigRational>, Vec<(usize, Value)>> = BTreeMap::new();
    for e in elems {
        groups
            .entry(e.1.truncated(rank - 1).coords().to_vec())
            .or_default()
            .push(e.clone());
    }
    let mut proj = Vec::new();
    let mut fibers = Vec::new();
    for (k, mut fiber) in groups {
        fiber.sort_by(key_cmp);
        proj.push((fibers.len(), Value::new(k).expect("nonempty")));
        fibers.push(fiber);
    }
    (proj, fibers)
}

fn fiber_ids(c: &BTreeSet<usize>, fibers: &Fibers) -> BTreeSet<usize> {
    fibers
        .iter()
        .enumerate()
        .filter(|(_, f)| f.iter().any(|e| c.contains(&e.0)))
        .map(|(k, _)| k)
        .collect()
}

/// The smallest initial set containing `c`.
pub fn initial_closure(c: &BTreeSet<usize>, weights: &[Value]) -> Result<InitialSet> {
    let rank = check(c, weights)?;
    let elems: Vec<(usize, Value)> = weights.iter().cloned().enumerate().collect();
    Ok(InitialSet {
        indices: closure_rec(c, &elems, rank),
    })
}

fn step_rec(b: &BTreeSet<usize>, elems: &[(usize, Value)], rank: usize) -> BTreeSet<usize> {
    if rank == 1 {
        let mut out = b.clone();
        if let Some(next) = elems
            .iter()
            .filter(|e| !b.contains(&e.0))
            .min_by(|a, b| key_cmp(a, b))
        {
            out.insert(next.0);
        }
        return out;
    }
    let (proj, fibers) = project(elems, rank);
    let b1 = fiber_ids(b, &fibers);
    let stepped = step_rec(&b1, &proj, rank - 1);
    let mut out = b.clone();
    for f in stepped {
        let fiber = &fibers[f];
        if b1.contains(&f) {
            if let Some(e) = fiber.iter().find(|e| !b.contains(&e.0)) {
                out.insert(e.0);
            }
        } else {
            out.insert(fiber[0].0);
        }
    }
    out
}

/// `levels` successive enlargements of `b0`, each initial; `b0` comes first.
/// Once every index is used the chain stays constant.
pub fn build_chain(b0: &InitialSet, weights: &[Value], levels: usize) -> Result<Vec<InitialSet>> {
    let rank = check(&b0.indices, weights)?;
    if initial_closure(&b0.indices, weights)? != *b0 {
        return Err(Error::InitialSet(format!("{:?} is not initial", b0.indices)));
    }
    let elems: Vec<(usize, Value)> = weights.iter().cloned().enumerate().collect();
    let mut chain = vec![b0.clone()];
    for _ in 0..levels {
        let last = chain.last().expect("nonempty").indices.clone();
        let next = closure_rec(&step_rec(&last, &elems, rank), &elems, rank);
        chain.push(InitialSet { indices: next });
    }
    Ok(chain)
}
