//! Truncated parametrization of the curve `y^2 = x^3 + u`, `u^2 = x^6 y`
//! with `x = t^4`, built by fixed-point iteration on power series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use toric_degen::Polynomial;

/// Power series in `t` modulo `t^len`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series(pub Vec<BigRational>);

impl Series {
    pub fn zero(len: usize) -> Self {
        Series(vec![BigRational::zero(); len])
    }

    pub fn monomial(len: usize, k: usize, c: BigRational) -> Self {
        let mut s = Series::zero(len);
        if k < len {
            s.0[k] = c;
        }
        s
    }

    pub fn one(len: usize) -> Self {
        Series::monomial(len, 0, BigRational::one())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn order(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &Series) -> Series {
        Series(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        Series(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Series) -> Series {
        let n = self.len();
        let mut out = Series::zero(n);
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    out.0[i + j] += a * b;
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Series {
        (0..e).fold(Series::one(self.len()), |acc, _| acc.mul(self))
    }

    /// Square root of a series with constant term 1.
    pub fn sqrt1(&self) -> Series {
        assert!(self.0[0].is_one());
        let n = self.len();
        let two = BigRational::from_integer(BigInt::from(2));
        let mut b = Series::one(n);
        for k in 1..n {
            let mut acc = self.0[k].clone();
            for i in 1..k {
                acc -= &b.0[i] * &b.0[k - i];
            }
            b.0[k] = acc / &two;
        }
        b
    }
}

/// `(x, y, u)` modulo `t^len`.
pub fn parametrization(len: usize) -> [Series; 3] {
    let half = BigRational::new(1.into(), 2.into());
    let t3 = Series::monomial(len, 3, BigRational::one());
    // 2a + a^2 = t^3 sqrt(1 + a)
    let mut a = Series::zero(len);
    loop {
        let root = Series::one(len).add(&a).sqrt1();
        let next = t3.mul(&root).add(&a.mul(&a).scale(&-BigRational::one())).scale(&half);
        if next == a {
            break;
        }
        a = next;
    }
    let one_a = Series::one(len).add(&a);
    let x = Series::monomial(len, 4, BigRational::one());
    let y = Series::monomial(len, 6, BigRational::one()).mul(&one_a);
    let u = Series::monomial(len, 15, BigRational::one()).mul(&one_a.sqrt1());
    [x, y, u]
}

/// `ord_t f(x(t), y(t), u(t))`, or `None` when it reaches the truncation.
pub fn oracle_order(f: &Polynomial, param: &[Series; 3]) -> Option<usize> {
    let len = param[0].len();
    let mut total = Series::zero(len);
    for (m, c) in f.terms() {
        let e = m.exps();
        let term = param[0].pow(e[0]).mul(&param[1].pow(e[1])).mul(&param[2].pow(e[2]));
        total = total.add(&term.scale(c));
    }
    total.order()
}

/// Arithmetic modulo the Mersenne prime `2^61 - 1`. Orders computed here
/// can only exceed the true orders, with probability about `len / P`.
pub const P: u64 = (1 << 61) - 1;

fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn addm(a: u64, b: u64) -> u64 {
    (a + b) % P
}

fn subm(a: u64, b: u64) -> u64 {
    (a + P - b) % P
}

fn powm(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a);
        }
        a = mulm(a, a);
        e >>= 1;
    }
    r
}

fn invm(a: u64) -> u64 {
    assert!(!a.is_multiple_of(P));
    powm(a, P - 2)
}

pub fn reduce(q: &BigRational) -> u64 {
    let p = BigInt::from(P);
    let num = ((q.numer() % &p) + &p) % &p;
    let den = ((q.denom() % &p) + &p) % &p;
    let num: u64 = num.try_into().unwrap();
    let den: u64 = den.try_into().unwrap();
    mulm(num, invm(den))
}

fn mul_series(a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len();
    let mut out = vec![0; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            if y != 0 {
                out[i + j] = addm(out[i + j], mulm(x, y));
            }
        }
    }
    out
}

/// Branch level `level`: `x = T^e` and `u_q = T^(e γ_q) b_q` with unit
/// series `b_q`, solving the first `level` equations with the last one cut.
pub struct BranchParam {
    pub e: u64,
    pub exponents: Vec<usize>,
    pub units: Vec<Vec<u64>>,
}

pub fn branch_parametrization(gammas: &[BigRational], n: &[u32], digits: &[Vec<u32>], level: usize, len: usize) -> BranchParam {
    let e: u64 = n[..level].iter().map(|&k| k as u64).product();
    let eq = BigRational::from_integer(BigInt::from(e));
    let exponents: Vec<usize> = gammas[..=level]
        .iter()
        .map(|g| {
            let v = g * &eq;
            assert!(v.is_integer());
            v.to_integer().try_into().unwrap()
        })
        .collect();
    // b_i^(n_i) = prod_q b_q^(t_q) + T^gap_i b_(i+1), solved degree by degree
    let mut units = vec![vec![0u64; len]; level + 1];
    for u in &mut units {
        u[0] = 1;
    }
    let factors: Vec<Vec<usize>> = (1..=level)
        .map(|i| {
            digits[i - 1]
                .iter()
                .enumerate()
                .flat_map(|(q, &t)| std::iter::repeat_n(q, t as usize))
                .collect()
        })
        .collect();
    let mut partial: Vec<Vec<Vec<u64>>> = factors
        .iter()
        .map(|f| {
            let mut one = vec![0u64; len];
            one[0] = 1;
            vec![one; f.len() + 1]
        })
        .collect();
    let mut rhs = vec![vec![0u64; len]; level + 1];
    let inv: Vec<u64> = (0..len as u64).map(|k| if k == 0 { 0 } else { invm(k) }).collect();
    for k in 1..len {
        for i in 1..=level {
            let chain = &mut partial[i - 1];
            for (j, &q) in factors[i - 1].iter().enumerate() {
                let mut c = 0;
                for m in 0..=k {
                    c = addm(c, mulm(chain[j][m], units[q][k - m]));
                }
                chain[j + 1][k] = c;
            }
            let mut r = chain.last().unwrap()[k];
            if i < level {
                let gap = exponents[i + 1] - n[i - 1] as usize * exponents[i];
                if k >= gap {
                    r = addm(r, units[i + 1][k - gap]);
                }
            }
            rhs[i][k] = r;
            // b = c^(1/n): k b_k = sum_j (j/n - (k - j)) c_j b_(k-j)
            let alpha = invm(n[i - 1] as u64);
            let mut acc = 0;
            for j in 1..=k {
                let coef = subm(mulm(alpha, j as u64), (k - j) as u64 % P);
                acc = addm(acc, mulm(coef, mulm(rhs[i][j], units[i][k - j])));
            }
            units[i][k] = mulm(acc, inv[k]);
        }
    }
    BranchParam { e, exponents, units }
}

impl BranchParam {
    /// `ord_T f / e`, or `None` at the truncation.
    pub fn value(&self, f: &Polynomial) -> Option<BigRational> {
        let len = self.units[0].len();
        let mut total = vec![0u64; len];
        for (m, c) in f.terms() {
            let ex = m.exps();
            if ex.iter().enumerate().any(|(q, &a)| a > 0 && q >= self.units.len()) {
                continue;
            }
            let shift: usize = ex.iter().zip(&self.exponents).map(|(&a, &w)| a as usize * w).sum();
            if shift >= len {
                continue;
            }
            let mut term = vec![0u64; len];
            term[shift] = reduce(c);
            for (q, &a) in ex.iter().enumerate() {
                for _ in 0..a {
                    term = mul_series(&term, &self.units[q]);
                }
            }
            for (t, x) in total.iter_mut().zip(term) {
                *t = addm(*t, x);
            }
        }
        total
            .iter()
            .position(|&c| c != 0)
            .map(|k| BigRational::new(BigInt::from(k), BigInt::from(self.e)))
    }
}
