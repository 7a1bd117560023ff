//! Integer linear algebra: kernels, Smith diagonals, ranks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::value::Value;

fn big_rows(a: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// A basis of `{v in Z^n : a v = 0}` for an `m x n` matrix `a` given by rows.
///
/// The basis comes from a unimodular transformation, so the lattice it spans
/// is saturated.
pub fn integer_kernel(a: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let m = a.len();
    // rows of [a^T | I]
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut r: Vec<BigInt> = (0..m).map(|i| BigInt::from(a[i][j])).collect();
            r.extend((0..n).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..m {
        if pivot_row >= n {
            break;
        }
        loop {
            // smallest nonzero entry in this column becomes the pivot
            let best = (pivot_row..n)
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&x, &y| rows[x][col].abs().cmp(&rows[y][col].abs()));
            let Some(best) = best else { break };
            rows.swap(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..n {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[pivot_row][col]);
                let pr = rows[pivot_row].clone();
                for (x, p) in rows[r].iter_mut().zip(&pr) {
                    *x -= &q * p;
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot_row += 1;
                break;
            }
        }
    }
    let mut basis: Vec<Vec<BigInt>> = rows
        .into_iter()
        .filter(|r| r[..m].iter().all(Zero::is_zero))
        .map(|r| r[m..].to_vec())
        .collect();
    size_reduce(&mut basis);
    basis
        .into_iter()
        .map(|v| {
            let mut v: Vec<i64> = v.iter().map(|x| x.to_i64().expect("kernel entry overflow")).collect();
            // first nonzero entry positive
            if v.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            v
        })
        .collect()
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pairwise reduction until no vector can be shortened by another.
fn size_reduce(basis: &mut [Vec<BigInt>]) {
    let k = basis.len();
    for _ in 0..200 {
        let mut changed = false;
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                let nj = dot(&basis[j], &basis[j]);
                if nj.is_zero() {
                    continue;
                }
                let d = dot(&basis[i], &basis[j]);
                // nearest integer to d / nj
                let two = BigInt::from(2);
                let q: BigInt = (&two * &d + &nj).div_floor(&(&two * &nj));
                if q.is_zero() {
                    continue;
                }
                let candidate: Vec<BigInt> = basis[i]
                    .iter()
                    .zip(&basis[j])
                    .map(|(x, y)| x - &q * y)
                    .collect();
                if dot(&candidate, &candidate) < dot(&basis[i], &basis[i]) {
                    basis[i] = candidate;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    basis.sort_by_key(|v| dot(v, v));
}

/// Rank over `Q` of an integer matrix given by rows.
pub fn rank(a: &[Vec<i64>]) -> usize {
    rank_big(&big_rows(a))
}

fn rank_big(a: &[Vec<BigInt>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    rank_rational(&mut rows)
}

fn rank_rational(rows: &mut [Vec<BigRational>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot[c];
            for (x, y) in rows[i].iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        r += 1;
    }
    r
}

/// Dimension over `Q` of the span of the values.
pub fn rational_rank(values: &[Value]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = values.iter().map(|v| v.coords().to_vec()).collect();
    rank_rational(&mut rows)
}

/// Weights scaled by a common denominator into integer rows (one row per
/// coordinate, one column per value).
pub fn integer_weight_matrix(values: &[Value]) -> Vec<Vec<i64>> {
    let rank = values.first().map_or(0, Value::rank);
    let scale = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(&v.denominator_lcm()));
    let scale = BigRational::from_integer(scale);
    (0..rank)
        .map(|c| {
            values
                .iter()
                .map(|v| {
                    (&v.coords()[c] * &scale)
                        .to_integer()
                        .to_i64()
                        .expect("weight overflow")
                })
                .collect()
        })
        .collect()
}

/// Nonzero diagonal entries of the Smith normal form.
pub fn smith_diagonal(a: &[Vec<i64>]) -> Vec<BigInt> {
    let mut m = big_rows(a);
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pick the smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = m[i][t].div_floor(&m[t][t]);
            if q.is_zero() {
                if !m[i][t].is_zero() {
                    clean = false;
                }
                continue;
            }
            let pr = m[t].clone();
            for (x, p) in m[i].iter_mut().zip(&pr) {
                *x -= &q * p;
            }
            if !m[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = m[t][j].div_floor(&m[t][t]);
            if !q.is_zero() {
                for i in 0..rows {
                    let p = m[i][t].clone();
                    m[i][j] -= &q * p;
                }
            }
            if !m[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block
        let mut fixed = true;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !m[i][j].is_multiple_of(&m[t][t]) {
                    let ri = m[i].clone();
                    for (x, y) in m[t].iter_mut().zip(&ri) {
                        *x += y;
                    }
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if fixed {
            diag.push(m[t][t].abs());
            t += 1;
        }
    }
    diag
}

/// A set of integer vectors spans a saturated lattice of full rank in its
/// span iff it is independent and every Smith diagonal entry is 1.
pub fn is_saturated_basis(vectors: &[Vec<i64>]) -> bool {
    if vectors.is_empty() {
        return true;
    }
    let d = smith_diagonal(vectors);
    d.len() == vectors.len() && d.iter().all(|x| x.is_one())
}

/// Whether `v` lies in the Z-span of `basis`.
pub fn in_lattice(basis: &[Vec<i64>], v: &[i64]) -> bool {
    if v.iter().all(|x| *x == 0) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    // v is in the lattice iff appending it keeps the Smith invariants' product
    // and rank unchanged
    let before = smith_diagonal(basis);
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    let after = smith_diagonal(&ext);
    if after.len() != before.len() {
        return false;
    }
    let p1: BigInt = before.iter().product();
    let p2: BigInt = after.iter().product();
    p1 == p2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn annihilates(a: &[Vec<i64>], v: &[i64]) -> bool {
        a.iter()
            .all(|row| row.iter().zip(v).map(|(x, y)| x * y).sum::<i64>() == 0)
    }

    #[test]
    fn kernel_of_cusp_weights() {
        let a = vec![vec![4, 6, 15]];
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(annihilates(&a, v));
        }
        assert!(is_saturated_basis(&k));
        assert!(in_lattice(&k, &[3, -2, 0]));
        assert!(in_lattice(&k, &[6, 1, -2]));
        assert!(!in_lattice(&k, &[1, 0, 0]));
    }

    #[test]
    fn kernel_of_two_four() {
        let k = integer_kernel(&[vec![2, 4]], 2);
        assert_eq!(k, vec![vec![2, -1]]);
    }

    #[test]
    fn independent_weights_have_no_kernel() {
        let k = integer_kernel(&[vec![1, 0], vec![0, 1]], 2);
        assert!(k.is_empty());
    }

    #[test]
    fn smith_detects_non_saturation() {
        assert!(!is_saturated_basis(&[vec![2, -4]]));
        assert_eq!(smith_diagonal(&[vec![2, 0], vec![0, 3]]), vec![BigInt::from(1), BigInt::from(6)]);
        assert!(is_saturated_basis(&[vec![3, -2, 0], vec![6, 1, -2]]));
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rational_rank(&[Value::int(4), Value::int(6)]), 1);
        assert_eq!(
            rational_rank(&[Value::from_ints(&[1, 0]), Value::from_ints(&[0, 1]), Value::from_ints(&[1, -1])]),
            2
        );
    }
}
