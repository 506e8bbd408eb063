//! Combinatorics of monomial ideals: Hilbert series, dimension, colength.

use serde::Serialize;

use crate::poly::Monomial;

/// Hilbert series `N(T) / (1-T)^n = Q(T) / (1-T)^d` of a graded quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    /// Coefficients of `N(T)`, constant term first.
    pub numerator: Vec<i64>,
    /// Krull dimension `d`; `-1` for the zero quotient.
    pub dimension: i64,
    /// Coefficients of `Q(T)`.
    pub reduced: Vec<i64>,
    /// `Q(1)`.
    pub multiplicity: i64,
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    if p.is_empty() {
        p.push(0);
    }
    p
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

/// Divide by `1 - T` when the division is exact.
fn divide_one_minus_t(p: &[i64]) -> Option<Vec<i64>> {
    if p.iter().sum::<i64>() != 0 {
        return None;
    }
    let mut q = Vec::with_capacity(p.len());
    let mut acc = 0;
    for &c in &p[..p.len() - 1] {
        acc += c;
        q.push(acc);
    }
    Some(trim(q))
}

fn minimize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<Monomial> = gens.to_vec();
    sorted.sort_by_key(|m| m.degree());
    let mut out: Vec<Monomial> = Vec::new();
    for m in sorted {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator `N(T)` of the Hilbert series of `K[x]/(gens)` over `(1-T)^n`.
fn numerator(gens: Vec<Monomial>) -> Vec<i64> {
    let gens = minimize(&gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        let mut p = vec![1i64];
        for g in &gens {
            let mut f = vec![0i64; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] = -1;
            p = poly_mul(&p, &f);
        }
        return p;
    }
    // pivot on the variable occurring in the most generators
    let n = gens[0].nvars();
    let mut counts = vec![0usize; n];
    for g in &gens {
        for (i, &e) in g.exponents().iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let pivot = (0..n).max_by_key(|&i| counts[i]).unwrap();
    let x = Monomial::var(n, pivot, 1);
    let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.exponents()[pivot] == 0).cloned().collect();
    plus.push(x.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            if h.exponents()[pivot] > 0 {
                h.exps_mut()[pivot] -= 1;
            }
            h
        })
        .collect();
    let a = numerator(plus);
    let b = numerator(colon);
    let mut tb = vec![0i64];
    tb.extend(b);
    poly_add(&a, &tb)
}

/// Hilbert data of `K[x_1..x_n] / (gens)` for monomial generators.
pub fn hilbert_of_monomials(gens: &[Monomial], nvars: usize) -> HilbertData {
    let num = numerator(gens.to_vec());
    if num.iter().all(|&c| c == 0) {
        return HilbertData {
            numerator: vec![0],
            dimension: -1,
            reduced: vec![0],
            multiplicity: 0,
        };
    }
    let mut q = num.clone();
    let mut k = 0;
    while let Some(next) = divide_one_minus_t(&q) {
        q = next;
        k += 1;
    }
    let multiplicity = q.iter().sum();
    HilbertData {
        numerator: num,
        dimension: nvars as i64 - k,
        reduced: q,
        multiplicity,
    }
}

/// Largest number of variables spanning a coordinate subspace that meets the
/// zero set of the monomials only trivially, i.e. the Krull dimension of the
/// quotient; `-1` when a generator is `1`.
pub fn dimension_of_monomials(gens: &[Monomial], nvars: usize) -> i64 {
    if gens.iter().any(|g| g.is_one()) {
        return -1;
    }
    let supports: Vec<u64> = minimize(gens)
        .iter()
        .map(|g| {
            g.exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u64, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    // an independent set avoids containing any generator support
    fn best(i: usize, n: usize, chosen: u64, size: i64, supports: &[u64], record: &mut i64) {
        if size + (n - i) as i64 <= *record {
            return;
        }
        if i == n {
            *record = size;
            return;
        }
        let with = chosen | (1 << i);
        if supports.iter().all(|&s| s & !with != 0) {
            best(i + 1, n, with, size + 1, supports, record);
        }
        best(i + 1, n, chosen, size, supports, record);
    }
    assert!(nvars <= 64, "too many variables");
    let mut record = 0;
    best(0, nvars, 0, 0, &supports, &mut record);
    record
}

/// Number of monomials outside the monomial ideal, or `None` when infinite.
pub fn colength_of_monomials(gens: &[Monomial], nvars: usize) -> Option<u64> {
    if gens.iter().any(|g| g.is_one()) {
        return Some(0);
    }
    let gens = minimize(gens);
    let mut bounds = vec![u32::MAX; nvars];
    for g in &gens {
        let support: Vec<usize> = (0..nvars).filter(|&i| g.exponents()[i] > 0).collect();
        if support.len() == 1 {
            let i = support[0];
            bounds[i] = bounds[i].min(g.exponents()[i]);
        }
    }
    if bounds.contains(&u32::MAX) {
        return None;
    }
    let mut count = 0u64;
    let mut current = Monomial::one(nvars);
    fn walk(i: usize, current: &mut Monomial, bounds: &[u32], gens: &[Monomial], count: &mut u64) {
        if i == bounds.len() {
            *count += 1;
            return;
        }
        for e in 0..bounds[i] {
            current.exps_mut()[i] = e;
            // prune: a monomial in the ideal stays in it when exponents grow
            let partial_in = gens.iter().any(|g| {
                g.exponents()[..=i]
                    .iter()
                    .zip(&current.exponents()[..=i])
                    .all(|(a, b)| a <= b)
                    && g.exponents()[i + 1..].iter().all(|&a| a == 0)
            });
            if partial_in {
                break;
            }
            walk(i + 1, current, bounds, gens, count);
        }
        current.exps_mut()[i] = 0;
    }
    walk(0, &mut current, &bounds, &gens, &mut count);
    Some(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn regular_sequence() {
        let h = hilbert_of_monomials(&[m(&[2, 0]), m(&[0, 3])], 2);
        assert_eq!(h.dimension, 0);
        assert_eq!(h.reduced, vec![1, 2, 2, 1]);
        assert_eq!(h.multiplicity, 6);
    }

    #[test]
    fn hypersurface_and_zero() {
        let h = hilbert_of_monomials(&[m(&[2, 0, 0])], 3);
        assert_eq!((h.dimension, h.multiplicity), (2, 2));
        assert_eq!(h.reduced, vec![1, 1]);
        let z = hilbert_of_monomials(&[], 1);
        assert_eq!((z.dimension, z.multiplicity, z.reduced.clone()), (1, 1, vec![1]));
    }

    #[test]
    fn dimension_and_colength() {
        assert_eq!(dimension_of_monomials(&[m(&[2, 0, 0])], 3), 2);
        assert_eq!(dimension_of_monomials(&[m(&[1, 0]), m(&[0, 1])], 2), 0);
        assert_eq!(dimension_of_monomials(&[m(&[0, 0])], 2), -1);
        assert_eq!(colength_of_monomials(&[m(&[2, 0]), m(&[1, 1]), m(&[0, 2])], 2), Some(3));
        assert_eq!(colength_of_monomials(&[m(&[2, 0]), m(&[0, 3])], 2), Some(6));
        assert_eq!(colength_of_monomials(&[m(&[2, 0])], 2), None);
    }
}
