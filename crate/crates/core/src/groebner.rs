//! Buchberger's algorithm for weighted orders, and local standard bases and
//! normal forms by Mora's tangent cone algorithm.
//!
//! Working polynomials are term vectors sorted ascending for the order in
//! use, so the leading term is the last one.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::poly::Polynomial;
use crate::ring::{Coeff, Field, Monomial, WeightedRing};

/// Monomial orders used by the engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Smallest weight leads; equal weights are broken by exponent-lex.
    /// Not a well-order: use it with standard bases and Mora reduction.
    Local,
    /// Largest weight leads, ties by exponent-lex. A well-order that agrees
    /// with [`MonomialOrder::Local`] on weight-homogeneous polynomials.
    WeightLex,
    /// Largest weight leads, ties by reverse lex with the given variable
    /// treated as the cheapest one.
    WeightRevlex { last: usize },
}

#[derive(Clone, Debug)]
enum Kind {
    Local,
    WeightLex,
    // variable priority, least significant first
    WeightRevlex(Vec<usize>),
}

#[derive(Clone, Debug)]
pub(crate) struct Order {
    kind: Kind,
    w: Vec<Vec<i64>>,
}

impl Order {
    pub(crate) fn new(ring: &WeightedRing, order: &MonomialOrder) -> Order {
        let kind = match order {
            MonomialOrder::Local => Kind::Local,
            MonomialOrder::WeightLex => Kind::WeightLex,
            MonomialOrder::WeightRevlex { last } => {
                let mut perm = vec![*last];
                perm.extend((0..ring.nvars()).rev().filter(|i| i != last));
                Kind::WeightRevlex(perm)
            }
        };
        Order {
            kind,
            w: ring.int_weights().to_vec(),
        }
    }

    pub(crate) fn is_local(&self) -> bool {
        matches!(self.kind, Kind::Local)
    }

    fn weight(&self, e: &[u32]) -> Vec<i128> {
        let h = self.w.first().map_or(0, Vec::len);
        let mut out = vec![0i128; h];
        for (x, row) in e.iter().zip(&self.w) {
            if *x == 0 {
                continue;
            }
            for (acc, c) in out.iter_mut().zip(row) {
                *acc += *x as i128 * *c as i128;
            }
        }
        out
    }

    /// Ecart degree: the weight for rank-1 weights, total degree otherwise.
    fn degree(&self, e: &[u32]) -> i128 {
        match self.w.first().map_or(0, Vec::len) {
            1 => self.weight(e)[0],
            _ => e.iter().map(|&x| x as i128).sum(),
        }
    }

    fn local_cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.weight(b).cmp(&self.weight(a)).then_with(|| a.cmp(b))
    }

    pub(crate) fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (&a.0, &b.0);
        match &self.kind {
            Kind::Local => self.local_cmp(a, b),
            Kind::WeightLex => self.weight(a).cmp(&self.weight(b)).then_with(|| a.cmp(b)),
            Kind::WeightRevlex(perm) => self.weight(a).cmp(&self.weight(b)).then_with(|| {
                for &i in perm {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

pub(crate) type WPoly = Vec<(Monomial, Coeff)>;

pub(crate) fn to_work(p: &Polynomial, ord: &Order) -> WPoly {
    let mut v: WPoly = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    v.sort_by(|a, b| ord.cmp(&a.0, &b.0));
    v
}

pub(crate) fn from_work(p: &WPoly, ring: &std::sync::Arc<WeightedRing>) -> Polynomial {
    Polynomial::from_raw(ring, p.iter().cloned().collect())
}

fn lead(p: &WPoly) -> &(Monomial, Coeff) {
    p.last().expect("lead of zero polynomial")
}

pub(crate) fn make_monic(p: &mut WPoly, field: &Field) {
    let Some((_, c)) = p.last() else { return };
    let inv = field.inv(c).expect("nonzero leading coefficient");
    for (_, a) in p.iter_mut() {
        *a = field.mul(a, &inv);
    }
}

/// `f - c * m * g`, both inputs sorted for `ord`.
fn axpy(ord: &Order, field: &Field, f: &WPoly, c: &Coeff, m: &Monomial, g: &WPoly) -> WPoly {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |k: usize| g[k].0.mul(m);
    let mut gj = if j < g.len() { Some(shifted(j)) } else { None };
    while i < f.len() || gj.is_some() {
        let take = match (&gj, i < f.len()) {
            (None, _) => Ordering::Less,
            (Some(_), false) => Ordering::Greater,
            (Some(mg), true) => ord.cmp(&f[i].0, mg),
        };
        match take {
            Ordering::Less => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let mg = gj.take().unwrap();
                out.push((mg, field.neg(&field.mul(c, &g[j].1))));
                j += 1;
                gj = if j < g.len() { Some(shifted(j)) } else { None };
            }
            Ordering::Equal => {
                let v = field.sub(&f[i].1, &field.mul(c, &g[j].1));
                if !v.is_zero() {
                    out.push((f[i].0.clone(), v));
                }
                i += 1;
                j += 1;
                gj = if j < g.len() { Some(shifted(j)) } else { None };
            }
        }
    }
    out
}

fn mul_monomial(p: &WPoly, m: &Monomial) -> WPoly {
    p.iter().map(|(n, c)| (n.mul(m), c.clone())).collect()
}

fn spoly(ord: &Order, field: &Field, f: &WPoly, g: &WPoly) -> WPoly {
    let (lf, cf) = lead(f);
    let (lg, cg) = lead(g);
    let l = lf.lcm(lg);
    let a = mul_monomial(f, &l.div(lf).unwrap());
    let c = field.div(cf, cg).unwrap();
    axpy(ord, field, &a, &c, &l.div(lg).unwrap(), g)
}

/// Full reduction for a well-order.
pub(crate) fn reduce_full(ord: &Order, field: &Field, f: WPoly, basis: &[WPoly]) -> WPoly {
    debug_assert!(!ord.is_local());
    let mut rem: WPoly = Vec::new();
    let mut h = f;
    while let Some((m, c)) = h.last().cloned() {
        match basis.iter().find(|g| lead(g).0.divides(&m)) {
            Some(g) => {
                let (lg, cg) = lead(g);
                let q = field.div(&c, cg).unwrap();
                h = axpy(ord, field, &h, &q, &m.div(lg).unwrap(), g);
            }
            None => {
                h.pop();
                rem.push((m, c));
            }
        }
    }
    rem.reverse();
    rem
}

/// Reduced Gröbner basis for a well-order.
pub(crate) fn buchberger(ord: &Order, field: &Field, gens: Vec<WPoly>) -> Vec<WPoly> {
    debug_assert!(!ord.is_local());
    let mut basis: Vec<WPoly> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for g in gens {
        if g.is_empty() {
            continue;
        }
        let mut g = g;
        make_monic(&mut g, field);
        for k in 0..basis.len() {
            pending.insert((k, basis.len()));
        }
        basis.push(g);
    }
    while !pending.is_empty() {
        // normal selection: smallest lcm first
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = lead(&basis[a.0]).0.lcm(&lead(&basis[a.1]).0);
                let lb = lead(&basis[b.0]).0.lcm(&lead(&basis[b.1]).0);
                ord.cmp(&la, &lb).then_with(|| a.cmp(b))
            })
            .unwrap();
        pending.remove(&(i, j));
        let li = &lead(&basis[i]).0;
        let lj = &lead(&basis[j]).0;
        let l = li.lcm(lj);
        if l == li.mul(lj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lead(&basis[k]).0.divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = spoly(ord, field, &basis[i], &basis[j]);
        let mut r = reduce_full(ord, field, s, &basis);
        if r.is_empty() {
            continue;
        }
        make_monic(&mut r, field);
        let n = basis.len();
        for k in 0..n {
            pending.insert((k, n));
        }
        basis.push(r);
    }
    interreduce(ord, field, basis)
}

/// Gröbner basis for a well-order together with cofactors expressing each
/// element in the generators. Elements are only top-reduced.
pub(crate) fn buchberger_tracked(
    ord: &Order,
    ring: &Arc<WeightedRing>,
    gens: &[WPoly],
) -> Vec<(WPoly, Vec<Polynomial>)> {
    debug_assert!(!ord.is_local());
    let field = ring.field();
    let k = gens.len();
    let unit = |i: usize, c: &Coeff| -> Vec<Polynomial> {
        (0..k)
            .map(|j| {
                if j == i {
                    Polynomial::constant(ring, c)
                } else {
                    Polynomial::zero(ring)
                }
            })
            .collect()
    };
    let combine = |a: &[Polynomial], ca: &Coeff, ma: &Monomial, b: &[Polynomial], cb: &Coeff, mb: &Monomial| {
        a.iter()
            .zip(b)
            .map(|(x, y)| &x.mul_monomial(ma).scale(ca) - &y.mul_monomial(mb).scale(cb))
            .collect::<Vec<_>>()
    };
    let one = Monomial::one(ring.nvars());
    let mut basis: Vec<(WPoly, Vec<Polynomial>)> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let top_reduce = |mut h: WPoly, mut cof: Vec<Polynomial>, basis: &[(WPoly, Vec<Polynomial>)]| {
        while let Some((m, c)) = h.last().cloned() {
            let Some((g, gc)) = basis.iter().find(|(g, _)| lead(g).0.divides(&m)) else {
                break;
            };
            let (lg, cg) = lead(g);
            let q = field.div(&c, cg).unwrap();
            let mm = m.div(lg).unwrap();
            h = axpy(ord, field, &h, &q, &mm, g);
            cof = combine(&cof, &Coeff::one(), &one, gc, &q, &mm);
        }
        (h, cof)
    };
    let monic = |h: &mut WPoly, cof: &mut Vec<Polynomial>| {
        let inv = field.inv(&lead(h).1).expect("nonzero leading coefficient");
        for (_, a) in h.iter_mut() {
            *a = field.mul(a, &inv);
        }
        for c in cof.iter_mut() {
            *c = c.scale(&inv);
        }
    };
    for (i, g) in gens.iter().enumerate() {
        if g.is_empty() {
            continue;
        }
        let (mut h, mut cof) = top_reduce(g.clone(), unit(i, &Coeff::one()), &basis);
        if h.is_empty() {
            continue;
        }
        monic(&mut h, &mut cof);
        for k in 0..basis.len() {
            pending.insert((k, basis.len()));
        }
        basis.push((h, cof));
    }
    while !pending.is_empty() {
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = lead(&basis[a.0].0).0.lcm(&lead(&basis[a.1].0).0);
                let lb = lead(&basis[b.0].0).0.lcm(&lead(&basis[b.1].0).0);
                ord.cmp(&la, &lb).then_with(|| a.cmp(b))
            })
            .unwrap();
        pending.remove(&(i, j));
        let li = lead(&basis[i].0).0.clone();
        let lj = lead(&basis[j].0).0.clone();
        let l = li.lcm(&lj);
        if l == li.mul(&lj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lead(&basis[k].0).0.divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let (mi, mj) = (l.div(&li).unwrap(), l.div(&lj).unwrap());
        let s = spoly(ord, field, &basis[i].0, &basis[j].0);
        // both leading coefficients are 1
        let cof = combine(&basis[i].1, &Coeff::one(), &mi, &basis[j].1, &Coeff::one(), &mj);
        let (mut h, mut cof) = top_reduce(s, cof, &basis);
        if h.is_empty() {
            continue;
        }
        monic(&mut h, &mut cof);
        let n = basis.len();
        for k in 0..n {
            pending.insert((k, n));
        }
        basis.push((h, cof));
    }
    let leads: Vec<Monomial> = basis.iter().map(|(g, _)| lead(g).0.clone()).collect();
    let mut it = (0..basis.len()).map(|i| {
        !(0..leads.len()).any(|k| k != i && leads[k].divides(&leads[i]) && (leads[k] != leads[i] || k < i))
    });
    basis.retain(|_| it.next().unwrap());
    basis.sort_by(|a, b| ord.cmp(&lead(&a.0).0, &lead(&b.0).0));
    basis
}

fn interreduce(ord: &Order, field: &Field, basis: Vec<WPoly>) -> Vec<WPoly> {
    let mut keep: Vec<WPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lg = &lead(g).0;
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let lh = &lead(h).0;
            k != i && lh.divides(lg) && (lh != lg || k < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<WPoly> = keep
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, g)| g.clone())
            .collect();
        let mut g = keep[i].clone();
        let top = g.pop().unwrap();
        let mut tail = reduce_full(ord, field, g, &others);
        tail.push(top);
        out.push(tail);
    }
    out.sort_by(|a, b| ord.cmp(&lead(a).0, &lead(b).0));
    out
}

/// A standard basis for the local order of the ideal generated by `gens` in the
/// localization at the origin, by Mora's tangent cone algorithm.
pub(crate) fn local_standard_basis(ring: &WeightedRing, gens: &[Polynomial]) -> Vec<WPoly> {
    let ord = Order::new(ring, &MonomialOrder::Local);
    let field = ring.field();
    let mut basis: Vec<WPoly> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let mut w = to_work(g, &ord);
        make_monic(&mut w, field);
        for k in 0..basis.len() {
            pending.insert((k, basis.len()));
        }
        basis.push(w);
    }
    while !pending.is_empty() {
        // lightest lcm first
        let &(i, j) = pending
            .iter()
            .min_by_key(|&&(a, b)| {
                let l = lead(&basis[a]).0.lcm(&lead(&basis[b]).0);
                (ord.degree(&l.0), a, b)
            })
            .unwrap();
        pending.remove(&(i, j));
        let li = &lead(&basis[i]).0;
        let lj = &lead(&basis[j]).0;
        let l = li.lcm(lj);
        if l == li.mul(lj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lead(&basis[k]).0.divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = spoly(&ord, field, &basis[i], &basis[j]);
        let mut r = mora_normal_form(&ord, field, s, &basis);
        if r.is_empty() {
            continue;
        }
        make_monic(&mut r, field);
        let n = basis.len();
        for k in 0..n {
            pending.insert((k, n));
        }
        basis.push(r);
    }
    // drop elements whose leading monomial is divisible by another's
    let leads: Vec<Monomial> = basis.iter().map(|g| lead(g).0.clone()).collect();
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        for k in 0..basis.len() {
            if i != k && keep[k] && leads[k].divides(&leads[i]) && (leads[k] != leads[i] || k < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut it = keep.into_iter();
    basis.retain(|_| it.next().unwrap());
    basis.sort_by(|a, b| ord.cmp(&lead(a).0, &lead(b).0));
    basis
}

fn ecart(ord: &Order, p: &WPoly) -> i128 {
    let top = p.iter().map(|(m, _)| ord.degree(&m.0)).max().unwrap_or(0);
    top - ord.degree(&lead(p).0 .0)
}

/// Mora's normal form for the local order: returns `h` with `u f - h` in the
/// ideal for some unit `u`, and either `h = 0` or its leading monomial not
/// divisible by any leading monomial of `basis`.
pub(crate) fn mora_normal_form(ord: &Order, field: &Field, f: WPoly, basis: &[WPoly]) -> WPoly {
    debug_assert!(ord.is_local());
    let mut t: Vec<WPoly> = basis.to_vec();
    let mut h = f;
    while let Some((m, c)) = h.last().cloned() {
        let Some(g) = t
            .iter()
            .filter(|g| lead(g).0.divides(&m))
            .min_by_key(|g| ecart(ord, g))
            .cloned()
        else {
            break;
        };
        if ecart(ord, &g) > ecart(ord, &h) {
            t.push(h.clone());
        }
        let (lg, cg) = lead(&g);
        let q = field.div(&c, cg).unwrap();
        h = axpy(ord, field, &h, &q, &m.div(lg).unwrap(), &g);
    }
    h
}

/// Reduction for the local order keeping only monomials accepted by `keep`,
/// which must describe the complement of a monomial ideal. Returns the
/// remainder and whether nothing was discarded.
pub(crate) fn truncated_normal_form(
    ord: &Order,
    field: &Field,
    f: WPoly,
    basis: &[WPoly],
    keep: &dyn Fn(&Monomial) -> bool,
) -> (WPoly, bool) {
    debug_assert!(ord.is_local());
    let mut exact = true;
    let filter = |p: WPoly, exact: &mut bool| -> WPoly {
        let before = p.len();
        let out: WPoly = p.into_iter().filter(|(m, _)| keep(m)).collect();
        if out.len() != before {
            *exact = false;
        }
        out
    };
    let mut h = filter(f, &mut exact);
    let mut rem: WPoly = Vec::new();
    while let Some((m, c)) = h.last().cloned() {
        match basis.iter().find(|g| lead(g).0.divides(&m)) {
            Some(g) => {
                let (lg, cg) = lead(g);
                let q = field.div(&c, cg).unwrap();
                h = filter(axpy(ord, field, &h, &q, &m.div(lg).unwrap(), g), &mut exact);
            }
            None => {
                h.pop();
                rem.push((m, c));
            }
        }
    }
    rem.reverse();
    (rem, exact)
}

/// Reduced Gröbner basis of the ideal generated by `gens` for a global order.
pub fn groebner_basis(gens: &[Polynomial], order: &MonomialOrder) -> Vec<Polynomial> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    assert!(*order != MonomialOrder::Local, "the local order is not a well-order");
    let ord = Order::new(&ring, order);
    let work = gens.iter().map(|g| to_work(g, &ord)).collect();
    buchberger(&ord, ring.field(), work)
        .iter()
        .map(|g| from_work(g, &ring))
        .collect()
}

/// Standard basis for the local order.
pub fn standard_basis(gens: &[Polynomial]) -> Vec<Polynomial> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    local_standard_basis(&ring, gens)
        .iter()
        .map(|g| from_work(g, &ring))
        .collect()
}

/// Remainder of `f` modulo a Gröbner basis for a global order.
pub fn reduce(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let ring = f.ring().clone();
    let ord = Order::new(&ring, order);
    let b: Vec<WPoly> = basis.iter().map(|g| to_work(g, &ord)).collect();
    from_work(&reduce_full(&ord, ring.field(), to_work(f, &ord), &b), &ring)
}

/// Leading monomial for an order.
pub fn leading_monomial(f: &Polynomial, order: &MonomialOrder) -> Option<Monomial> {
    let ord = Order::new(f.ring(), order);
    f.terms().map(|(m, _)| m).max_by(|a, b| ord.cmp(a, b)).cloned()
}
