//! Minors and sub-Pfaffians over any commutative ring, enumerated over index
//! subsets in lexicographic order.
//!
//! Both tables are filled level by level (first-row expansion), so computing every
//! minor of every size costs one pass per size instead of one determinant per subset.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::rational::Q;

/// Minimal commutative ring interface. `zero_like`/`one_like` take `self` so that
/// elements carrying context (such as a truncation order) can build constants.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Ring for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

fn mask(set: &[usize]) -> u64 {
    set.iter().fold(0u64, |m, &i| m | (1 << i))
}

/// Every `s x s` minor of `m` for `s = 1..=max_size`; entry `s - 1` lists minors with
/// row subsets in lex order, and for each row subset the column subsets in lex order.
pub fn all_minors<R: Ring>(m: &[Vec<R>], max_size: usize) -> Vec<Vec<R>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    assert!(rows <= 64 && cols <= 64);
    let max_size = max_size.min(rows).min(cols);
    let mut prev: HashMap<(u64, u64), R> = HashMap::new();
    let mut out = Vec::with_capacity(max_size);
    for s in 1..=max_size {
        let row_sets = subsets(rows, s);
        let col_sets = subsets(cols, s);
        let mut level = HashMap::with_capacity(row_sets.len() * col_sets.len());
        let mut listed = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                let v = if s == 1 {
                    m[rs[0]][cs[0]].clone()
                } else {
                    // expand along the first row of the subset
                    let r0 = rs[0];
                    let rest = mask(rs) & !(1 << r0);
                    let cmask = mask(cs);
                    let mut acc = m[r0][cs[0]].zero_like();
                    for (p, &c) in cs.iter().enumerate() {
                        let a = &m[r0][c];
                        if a.is_zero() {
                            continue;
                        }
                        let sub = &prev[&(rest, cmask & !(1 << c))];
                        let term = a.mul(sub);
                        acc = if p % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                    }
                    acc
                };
                level.insert((mask(rs), mask(cs)), v.clone());
                listed.push(v);
            }
        }
        out.push(listed);
        prev = level;
    }
    out
}

pub fn determinant<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    assert!(n > 0);
    all_minors(m, n).pop().and_then(|mut v| v.pop()).expect("one top minor")
}

/// Sub-Pfaffians of a skew matrix on every even subset of size `2..=max_size`, lex order
/// within each size. Entry `j` holds the subsets of size `2 (j + 1)`.
pub fn all_subpfaffians<R: Ring>(m: &[Vec<R>], max_size: usize) -> Vec<Vec<R>> {
    let n = m.len();
    assert!(n <= 64);
    let mut prev: HashMap<u64, R> = HashMap::new();
    let mut out = Vec::new();
    let mut size = 2;
    while size <= max_size.min(n) {
        let sets = subsets(n, size);
        let mut level = HashMap::with_capacity(sets.len());
        let mut listed = Vec::with_capacity(sets.len());
        for set in &sets {
            let v = if size == 2 {
                m[set[0]][set[1]].clone()
            } else {
                let s0 = set[0];
                let full = mask(set);
                let mut acc = m[s0][set[1]].zero_like();
                for (p, &j) in set.iter().enumerate().skip(1) {
                    let a = &m[s0][j];
                    if a.is_zero() {
                        continue;
                    }
                    let term = a.mul(&prev[&(full & !(1 << s0) & !(1 << j))]);
                    acc = if p % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
                }
                acc
            };
            level.insert(mask(set), v.clone());
            listed.push(v);
        }
        out.push(listed);
        prev = level;
        size += 2;
    }
    out
}

/// Pfaffian of an even-size skew matrix (1 for the empty matrix).
pub fn pfaffian<R: Ring>(m: &[Vec<R>], unit: &R) -> R {
    let n = m.len();
    if n == 0 {
        return unit.one_like();
    }
    if n % 2 == 1 {
        return unit.zero_like();
    }
    all_subpfaffians(m, n).pop().and_then(|mut v| v.pop()).expect("one top pfaffian")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&mat(&[&[2, 1], &[7, 4]])), q(1));
        let m = mat(&[&[1, 2, 3], &[0, 1, 4], &[5, 6, 0]]);
        assert_eq!(determinant(&m), q(1));
        let mm = crate::linalg::Matrix::from_i64(&[&[1, 2, 3], &[0, 1, 4], &[5, 6, 0]]);
        assert_eq!(mm.determinant().unwrap(), q(1));
    }

    #[test]
    fn pfaffians() {
        assert_eq!(pfaffian(&mat(&[&[0, 1], &[-1, 0]]), &q(1)), q(1));
        // Pf of the 4x4 skew matrix with upper entries a..f is af - be + cd
        let m = mat(&[&[0, 1, 2, 3], &[-1, 0, 4, 5], &[-2, -4, 0, 6], &[-3, -5, -6, 0]]);
        assert_eq!(pfaffian(&m, &q(1)), q(6 - 2 * 5 + 3 * 4));
    }
}
