//! Small exact linear algebra: ranks over Q and minors of polynomial matrices.

use std::collections::HashMap;

use num_traits::Zero;

use crate::poly::{Coeff, Polynomial};

/// Rank of a rational matrix given by rows.
pub fn rank(rows: &[Vec<Coeff>]) -> usize {
    let mut m: Vec<Vec<Coeff>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in c..ncols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// All `k x k` minors of a polynomial matrix (rows of equal length), by
/// Laplace expansion along the first chosen row with memoization.
pub fn minors(matrix: &[Vec<Polynomial>], k: usize) -> Vec<Polynomial> {
    let nrows = matrix.len();
    let ncols = matrix.first().map_or(0, |r| r.len());
    if k == 0 || k > nrows || k > ncols {
        return Vec::new();
    }
    let mut memo: HashMap<(u64, u64), Polynomial> = HashMap::new();
    let mut out = Vec::new();
    for rows in subsets(nrows, k) {
        for cols in subsets(ncols, k) {
            let d = det(matrix, &rows, &cols, &mut memo);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

fn mask(idx: &[usize]) -> u64 {
    idx.iter().fold(0, |m, &i| m | (1 << i))
}

fn det(matrix: &[Vec<Polynomial>], rows: &[usize], cols: &[usize], memo: &mut HashMap<(u64, u64), Polynomial>) -> Polynomial {
    if rows.len() == 1 {
        return matrix[rows[0]][cols[0]].clone();
    }
    let key = (mask(rows), mask(cols));
    if let Some(d) = memo.get(&key) {
        return d.clone();
    }
    let r0 = rows[0];
    let rest = &rows[1..];
    let mut acc = Polynomial::zero(matrix[r0][cols[0]].ring());
    for (j, &c) in cols.iter().enumerate() {
        let entry = &matrix[r0][c];
        if entry.is_zero() {
            continue;
        }
        let sub: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let m = det(matrix, rest, &sub, memo);
        let term = entry * &m;
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    memo.insert(key, acc.clone());
    acc
}

/// Determinant of a square polynomial matrix.
pub fn determinant(matrix: &[Vec<Polynomial>]) -> Polynomial {
    let n = matrix.len();
    let idx: Vec<usize> = (0..n).collect();
    det(matrix, &idx, &idx, &mut HashMap::new())
}

/// Increasing `k`-subsets of `0..n`.
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
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Locus, RingContext};

    #[test]
    fn rank_and_minors() {
        let q = |a: i64| Coeff::from_integer(a.into());
        assert_eq!(rank(&[vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rank(&[vec![q(1), q(1)], vec![q(1), q(-1)]]), 2);
        let r = RingContext::new(&["x", "y"], Locus::Affine).unwrap();
        let p = |s: &str| parse_polynomial(&r, s).unwrap();
        let m = vec![vec![p("x"), p("y"), p("1")], vec![p("y"), p("x"), p("0")]];
        let mut all: Vec<String> = minors(&m, 2).iter().map(|f| f.to_string()).collect();
        all.sort();
        assert_eq!(all, vec!["-x", "-y", "x^2 - y^2"]);
        assert_eq!(determinant(&[vec![p("x"), p("1")], vec![p("1"), p("x")]]), p("x^2 - 1"));
        assert_eq!(subsets(4, 2).len(), 6);
    }
}
