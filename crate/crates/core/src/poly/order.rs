//! Monomial orderings.
//!
//! Global orderings (every variable `> 1`) drive Buchberger's algorithm; local
//! and mixed orderings (some variable `< 1`) drive Mora's normal form. A
//! weighted ordering compares the weighted degree first and breaks ties with
//! an inner ordering, which is how J-adic filtrations along a coordinate
//! subspace are expressed.

use std::cmp::Ordering;

use super::monomial::Monomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic (`dp`).
    DegRevLex,
    /// Pure lexicographic (`lp`).
    Lex,
    /// Negative graded reverse lexicographic (`ds`): lower degree is larger.
    NegDegRevLex,
    /// Weighted degree first (larger is greater), ties broken by `tie`.
    Weighted {
        weights: Vec<i64>,
        tie: Box<MonomialOrder>,
    },
    /// Product ordering: compare on the `block` variables with `first`, then
    /// on the remaining variables with `rest`.
    Block {
        block: Vec<bool>,
        first: Box<MonomialOrder>,
        rest: Box<MonomialOrder>,
    },
    /// On monomials with one extra trailing variable `h`: total degree
    /// first, ties broken by `inner` on the other variables. Used for
    /// standard bases via homogenization.
    Homogenized(Box<MonomialOrder>),
}

impl MonomialOrder {
    /// Elimination ordering for the variables flagged in `block`, degrevlex
    /// inside both blocks.
    pub fn elimination(block: Vec<bool>) -> Self {
        MonomialOrder::Block {
            block,
            first: Box::new(MonomialOrder::DegRevLex),
            rest: Box::new(MonomialOrder::DegRevLex),
        }
    }

    /// Global degrevlex on the `block` variables, local `ds` on the rest. The
    /// localization is `K[rest]_(rest)[block]`, and the block is eliminated.
    pub fn local_elimination(block: Vec<bool>) -> Self {
        MonomialOrder::Block {
            block,
            first: Box::new(MonomialOrder::DegRevLex),
            rest: Box::new(MonomialOrder::NegDegRevLex),
        }
    }

    /// Local ordering refining the filtration by degree in the `normal`
    /// variables (lower degree is larger), ties broken by `ds`.
    pub fn normal_filtration(normal: &[bool]) -> Self {
        MonomialOrder::Weighted {
            weights: normal.iter().map(|&b| if b { -1 } else { 0 }).collect(),
            tie: Box::new(MonomialOrder::NegDegRevLex),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_filtered(a.exponents(), b.exponents(), &|_| true)
    }

    fn cmp_filtered(&self, a: &[u32], b: &[u32], on: &dyn Fn(usize) -> bool) -> Ordering {
        match self {
            MonomialOrder::DegRevLex | MonomialOrder::NegDegRevLex => {
                let (mut da, mut db) = (0u64, 0u64);
                for i in 0..a.len() {
                    if on(i) {
                        da += a[i] as u64;
                        db += b[i] as u64;
                    }
                }
                let by_degree = if matches!(self, MonomialOrder::DegRevLex) {
                    da.cmp(&db)
                } else {
                    db.cmp(&da)
                };
                by_degree.then_with(|| {
                    for i in (0..a.len()).rev() {
                        if on(i) && a[i] != b[i] {
                            return b[i].cmp(&a[i]);
                        }
                    }
                    Ordering::Equal
                })
            }
            MonomialOrder::Lex => {
                for i in 0..a.len() {
                    if on(i) && a[i] != b[i] {
                        return a[i].cmp(&b[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Weighted { weights, tie } => {
                let (mut wa, mut wb) = (0i64, 0i64);
                for i in 0..a.len() {
                    if on(i) {
                        wa += weights[i] * a[i] as i64;
                        wb += weights[i] * b[i] as i64;
                    }
                }
                wa.cmp(&wb).then_with(|| tie.cmp_filtered(a, b, on))
            }
            MonomialOrder::Block { block, first, rest } => first
                .cmp_filtered(a, b, &|i| block[i] && on(i))
                .then_with(|| rest.cmp_filtered(a, b, &|i| !block[i] && on(i))),
            MonomialOrder::Homogenized(inner) => {
                let n = a.len() - 1;
                let (mut da, mut db) = (0u64, 0u64);
                for i in 0..=n {
                    if on(i) {
                        da += a[i] as u64;
                        db += b[i] as u64;
                    }
                }
                da.cmp(&db).then_with(|| inner.cmp_filtered(&a[..n], &b[..n], on))
            }
        }
    }

    /// Every variable is larger than `1`: a well-ordering.
    pub fn is_global(&self, nvars: usize) -> bool {
        let one = Monomial::one(nvars);
        (0..nvars).all(|i| self.cmp(&Monomial::var(nvars, i, 1), &one) == Ordering::Greater)
    }

    /// Total degree is compared first.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::DegRevLex | MonomialOrder::Homogenized(_))
    }

    /// Every variable is smaller than `1`.
    pub fn is_local(&self, nvars: usize) -> bool {
        let one = Monomial::one(nvars);
        (0..nvars).all(|i| self.cmp(&Monomial::var(nvars, i, 1), &one) == Ordering::Less)
    }

    /// Whether `self` can be used on monomials with `nvars` variables.
    pub fn fits(&self, nvars: usize) -> bool {
        match self {
            MonomialOrder::DegRevLex | MonomialOrder::Lex | MonomialOrder::NegDegRevLex => true,
            MonomialOrder::Weighted { weights, tie } => weights.len() == nvars && tie.fits(nvars),
            MonomialOrder::Block { block, first, rest } => {
                block.len() == nvars && first.fits(nvars) && rest.fits(nvars)
            }
            MonomialOrder::Homogenized(inner) => nvars > 0 && inner.fits(nvars - 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn degrevlex_and_ds() {
        let o = MonomialOrder::DegRevLex;
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        // x*z vs y^2: equal degree, revlex says y^2 > x*z
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        let ds = MonomialOrder::NegDegRevLex;
        assert_eq!(ds.cmp(&m(&[2, 0, 0]), &m(&[0, 1, 0])), Ordering::Less);
        assert_eq!(ds.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert!(o.is_global(3));
        assert!(ds.is_local(3));
    }

    #[test]
    fn elimination_block() {
        let o = MonomialOrder::elimination(vec![true, false, false]);
        // anything containing the first variable beats everything that does not
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
        assert!(o.is_global(3));
        let mixed = MonomialOrder::local_elimination(vec![true, false, false]);
        assert!(!mixed.is_global(3) && !mixed.is_local(3));
        assert_eq!(mixed.cmp(&m(&[1, 0, 0]), &m(&[0, 0, 0])), Ordering::Greater);
        assert_eq!(mixed.cmp(&m(&[0, 1, 0]), &m(&[0, 0, 0])), Ordering::Less);
    }

    #[test]
    fn normal_filtration_is_local() {
        let o = MonomialOrder::normal_filtration(&[true, false, true]);
        assert!(o.is_local(3));
        // x^2 (normal degree 2) is smaller than y^2 z (normal degree 1)
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[0, 2, 1])), Ordering::Less);
    }

    #[test]
    fn homogenized_ds_is_global() {
        let o = MonomialOrder::Homogenized(Box::new(MonomialOrder::NegDegRevLex));
        assert!(o.fits(3) && !o.fits(0));
        assert!(o.is_global(3));
        // same total degree: x*h beats x^2 because ds prefers lower degree
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[2, 0, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }
}
