//! Independent oracles shared by the integration tests. They use only plain
//! linear algebra over Q, never the basis engine.
#![allow(dead_code)]

use std::collections::HashMap;

use germlab::poly::{Coeff, Ideal, Monomial, Polynomial};
use num_traits::{One, Zero};

/// All monomials in `n` variables of total degree `<= d`.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; n], &mut out);
    out
}

/// Rank over Q of the given rows (sparse maps column -> value).
pub fn rank(rows: Vec<HashMap<usize, Coeff>>) -> usize {
    let mut pivots: Vec<(usize, HashMap<usize, Coeff>)> = Vec::new();
    for mut row in rows {
        for (col, prow) in &pivots {
            if let Some(c) = row.get(col).cloned() {
                let f = c / &prow[col];
                for (k, v) in prow {
                    let e = row.entry(*k).or_insert_with(Coeff::zero);
                    *e -= &f * v;
                }
                row.retain(|_, v| !v.is_zero());
            }
        }
        if let Some(&col) = row.keys().min() {
            pivots.push((col, row));
        }
    }
    pivots.len()
}

fn truncated_row(p: &Polynomial, index: &HashMap<Monomial, usize>) -> HashMap<usize, Coeff> {
    p.terms()
        .iter()
        .filter_map(|(m, c)| index.get(m).map(|&k| (k, c.clone())))
        .collect()
}

/// `dim K[x] / (I + m^d)` from the rank of the truncated Macaulay matrix.
pub fn truncated_quotient_dim(ideal: &Ideal, d: u32) -> usize {
    let ring = ideal.ring();
    let n = ring.nvars();
    if d == 0 {
        return 0;
    }
    let monos = monomials_up_to(n, d - 1);
    let index: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in ideal.gens() {
        for m in &monos {
            let shifted = g.mul_term(m, &Coeff::one());
            let row = truncated_row(&shifted, &index);
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    monos.len() - rank(rows)
}

/// Local colength at the origin: the truncated quotient dimension once it
/// stabilizes (equal at `d` and `d + 1` means `m^d` lies in the ideal).
pub fn brute_force_colength(ideal: &Ideal, max_degree: u32) -> u64 {
    let mut prev = truncated_quotient_dim(ideal, 1);
    for d in 2..=max_degree {
        let cur = truncated_quotient_dim(ideal, d);
        if cur == prev {
            return cur as u64;
        }
        prev = cur;
    }
    panic!("colength oracle did not stabilize below degree {max_degree}");
}

/// Membership of a homogeneous `p` in a homogeneous ideal, decided in the
/// single degree of `p`.
pub fn linear_membership(ideal: &Ideal, p: &Polynomial) -> bool {
    assert!(p.is_homogeneous() && ideal.is_homogeneous());
    let d = p.degree().unwrap();
    let n = ideal.ring().nvars();
    let monos: Vec<Monomial> = monomials_up_to(n, d).into_iter().filter(|m| m.degree() == d).collect();
    let index: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in ideal.gens() {
        let gd = g.degree().unwrap();
        if gd > d {
            continue;
        }
        for m in monomials_up_to(n, d - gd).into_iter().filter(|m| m.degree() == d - gd) {
            rows.push(truncated_row(&g.mul_term(&m, &Coeff::one()), &index));
        }
    }
    let r0 = rank(rows.clone());
    rows.push(truncated_row(p, &index));
    rank(rows) == r0
}
