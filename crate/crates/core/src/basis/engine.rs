//! Buchberger's algorithm for global orderings. Standard bases for local and
//! mixed orderings come from Gröbner bases of the homogenized generators
//! (Lazard's method); Mora's normal form serves reduction in the local ring.

use super::ipoly::{IPoly, Scalar};
use crate::error::{Error, Result};
use crate::poly::{Coeff, Monomial, MonomialOrder};

/// Reduction-step counter shared by one basis computation.
pub(crate) struct Counter {
    used: u64,
    limit: u64,
}

impl Counter {
    pub fn new(limit: u64) -> Counter {
        Counter { used: 0, limit }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::Budget(self.limit))
        } else {
            Ok(())
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Shared state of both completion procedures.
struct Completion<'a, S: Scalar> {
    order: &'a MonomialOrder,
    polys: Vec<IPoly<S>>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<'a, S: Scalar> Completion<'a, S> {
    fn new(order: &'a MonomialOrder) -> Self {
        Completion {
            order,
            polys: Vec::new(),
            sugar: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        }
    }

    fn reducers(&self) -> impl Iterator<Item = &IPoly<S>> {
        self.polys.iter().zip(&self.active).filter(|(_, &a)| a).map(|(p, _)| p)
    }

    fn reduce(&self, f: IPoly<S>, counter: &mut Counter) -> Result<IPoly<S>> {
        let t: Vec<&IPoly<S>> = self.reducers().collect();
        full_reduce(f, &t, self.order, counter, None)
    }

    /// Gebauer–Möller update for a new element `h`.
    fn insert(&mut self, h: IPoly<S>, sugar: u32) {
        let k = self.polys.len();
        let hl = h.lm().clone();
        let mut candidates: Vec<Pair> = Vec::new();
        for (i, g) in self.polys.iter().enumerate() {
            if !self.active[i] {
                continue;
            }
            let lcm = g.lm().lcm(&hl);
            let s = (sugar + lcm.degree() - hl.degree()).max(self.sugar[i] + lcm.degree() - g.lm().degree());
            candidates.push(Pair { i, j: k, lcm, sugar: s });
        }
        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::new();
        let n = candidates.len();
        let coprime: Vec<bool> = candidates
            .iter()
            .map(|p| self.polys[p.i].lm().is_coprime(&hl))
            .collect();
        let mut removed = vec![false; n];
        for a in 0..n {
            if coprime[a] {
                continue;
            }
            for b in 0..n {
                if a == b || removed[b] {
                    continue;
                }
                let (la, lb) = (&candidates[a].lcm, &candidates[b].lcm);
                if lb.divides(la) && (lb != la || b < a) {
                    removed[a] = true;
                    break;
                }
            }
        }
        for (idx, p) in candidates.into_iter().enumerate() {
            if removed[idx] {
                continue;
            }
            // product criterion
            if coprime[idx] {
                continue;
            }
            kept.push(p);
        }
        // old pairs made redundant by h
        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !hl.divides(&p.lcm) {
                return true;
            }
            let li = polys[p.i].lm().lcm(&hl);
            let lj = polys[p.j].lm().lcm(&hl);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(kept);
        for i in 0..self.polys.len() {
            if self.active[i] && hl.divides(self.polys[i].lm()) {
                self.active[i] = false;
            }
        }
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(true);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        // sugar for graded orderings, smallest lcm first otherwise
        let graded = order.is_graded();
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (p, q) = (&self.pairs[k], &self.pairs[best]);
            let better = if graded {
                (p.sugar, p.lcm.degree())
                    .cmp(&(q.sugar, q.lcm.degree()))
                    .then_with(|| order.cmp(&p.lcm, &q.lcm))
                    .is_lt()
            } else {
                order.cmp(&p.lcm, &q.lcm).is_lt()
            };
            if better {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn run(&mut self, gens: Vec<IPoly<S>>, counter: &mut Counter) -> Result<()> {
        let mut gens = gens;
        gens.sort_by(|a, b| a.deg.cmp(&b.deg).then_with(|| self.order.cmp(a.lm(), b.lm())));
        for f in gens {
            let s = f.deg;
            let h = self.reduce(f, counter)?;
            if h.is_zero() {
                continue;
            }
            if h.lm().is_one() {
                self.collapse_to_unit(h);
                return Ok(());
            }
            self.insert(h, s);
        }
        while let Some(pair) = self.next_pair() {
            counter.tick()?;
            let s = IPoly::spoly(&self.polys[pair.i], &self.polys[pair.j], self.order);
            if s.is_zero() {
                continue;
            }
            let h = self.reduce(s, counter)?;
            if h.is_zero() {
                continue;
            }
            if h.lm().is_one() {
                self.collapse_to_unit(h);
                return Ok(());
            }
            self.insert(h, pair.sugar);
        }
        Ok(())
    }

    fn collapse_to_unit(&mut self, h: IPoly<S>) {
        let one = Monomial::one(h.lm().nvars());
        self.polys = vec![IPoly::from_sorted(vec![(one, S::one())])];
        self.sugar = vec![0];
        self.active = vec![true];
        self.pairs.clear();
    }

    /// Active elements with pairwise non-dividing leading monomials.
    fn minimal(self) -> Vec<IPoly<S>> {
        let mut out: Vec<IPoly<S>> = Vec::new();
        for (p, a) in self.polys.into_iter().zip(self.active) {
            if a && !out.iter().any(|q| q.lm().divides(p.lm())) {
                out.retain(|q| !p.lm().divides(q.lm()));
                out.push(p);
            }
        }
        out
    }
}

/// Reduce the leading term until it is irreducible (global orderings).
pub(crate) fn top_reduce<S: Scalar>(mut h: IPoly<S>, g: &[&IPoly<S>], order: &MonomialOrder, counter: &mut Counter) -> Result<IPoly<S>> {
    while !h.is_zero() {
        let Some(r) = g.iter().find(|r| r.lm().divides(h.lm())) else {
            break;
        };
        counter.tick()?;
        let (m, c) = (h.lm().clone(), h.lc().clone());
        h = h.reduce_term(&c, &m, r, order, None);
    }
    Ok(h)
}

/// Full reduction: no term of the result is divisible by a leading monomial
/// of `g` (global orderings only).
pub(crate) fn full_reduce<S: Scalar>(
    h: IPoly<S>,
    g: &[&IPoly<S>],
    order: &MonomialOrder,
    counter: &mut Counter,
    mut scale: Option<&mut Coeff>,
) -> Result<IPoly<S>> {
    let mut h = h;
    let mut pos = 0;
    while pos < h.terms.len() {
        let found = g.iter().find(|r| r.lm().divides(&h.terms[pos].0));
        match found {
            Some(r) => {
                counter.tick()?;
                let (m, c) = h.terms[pos].clone();
                // terms before `pos` are already irreducible and unaffected in
                // position because reduction only changes smaller terms
                h = h.reduce_term(&c, &m, r, order, scale.as_deref_mut());
            }
            None => pos += 1,
        }
    }
    Ok(h)
}

/// Mora's normal form with écart control. The result `h` satisfies
/// `u f = h + sum a_i g_i` for a unit `u`, and its leading monomial is not
/// divisible by any leading monomial of `g`.
pub(crate) fn mora_reduce<S: Scalar>(
    h: IPoly<S>,
    g: &[&IPoly<S>],
    order: &MonomialOrder,
    counter: &mut Counter,
    mut scale: Option<&mut Coeff>,
) -> Result<IPoly<S>> {
    let mut h = h;
    let mut extra: Vec<IPoly<S>> = Vec::new();
    while !h.is_zero() {
        let lm = h.lm().clone();
        let mut best: Option<(u32, &IPoly<S>)> = None;
        for r in g.iter().copied().chain(extra.iter()) {
            if r.lm().divides(&lm) {
                let e = r.ecart();
                if best.is_none_or(|(b, _)| e < b) {
                    best = Some((e, r));
                    if e == 0 {
                        break;
                    }
                }
            }
        }
        let Some((e, r)) = best else {
            break;
        };
        counter.tick()?;
        let c = h.lc().clone();
        let next = h.reduce_term(&c, &lm, r, order, scale.as_deref_mut());
        if e > h.ecart() {
            extra.push(h);
        }
        h = next;
    }
    Ok(h)
}

/// Minimal Gröbner basis of the homogenized generators for the homogenized
/// ordering. Its dehomogenization is a standard basis (Lazard's method).
pub(crate) fn homogeneous_basis<S: Scalar>(gens: &[IPoly<S>], order: &MonomialOrder, counter: &mut Counter) -> Result<Vec<IPoly<S>>> {
    let homogenized = MonomialOrder::Homogenized(Box::new(order.clone()));
    let gens = gens.iter().map(|g| g.homogenize(&homogenized)).collect();
    let mut c = Completion::new(&homogenized);
    c.run(gens, counter)?;
    Ok(c.minimal())
}

/// Minimal standard basis from a homogeneous Gröbner basis.
pub(crate) fn dehomogenized_basis<S: Scalar>(homogeneous: &[IPoly<S>], order: &MonomialOrder) -> Vec<IPoly<S>> {
    let mut out: Vec<IPoly<S>> = Vec::new();
    for g in homogeneous {
        let p = g.dehomogenize(order);
        if !out.iter().any(|q| q.lm().divides(p.lm())) {
            out.retain(|q| !p.lm().divides(q.lm()));
            out.push(p);
        }
    }
    out.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    out
}

/// Standard basis (local or mixed orderings) or Gröbner basis (global),
/// minimal, leading coefficients positive, primitive.
pub(crate) fn complete<S: Scalar>(gens: Vec<IPoly<S>>, order: &MonomialOrder, local: bool, counter: &mut Counter) -> Result<Vec<IPoly<S>>> {
    if let Some(unit) = gens.iter().find(|g| !g.is_zero() && g.lm().is_one()) {
        let one = Monomial::one(unit.lm().nvars());
        return Ok(vec![IPoly::from_sorted(vec![(one, S::one())])]);
    }
    if local {
        let h = homogeneous_basis(&gens, order, counter)?;
        return Ok(dehomogenized_basis(&h, order));
    }
    let mut c = Completion::new(order);
    c.run(gens, counter)?;
    let mut basis = c.minimal();
    let n = basis.len();
    for i in 0..n {
        let others: Vec<&IPoly<S>> = (0..n).filter(|&j| j != i).map(|j| &basis[j]).collect();
        let r = full_reduce(basis[i].clone(), &others, order, counter, None)?;
        basis[i] = r;
    }
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    Ok(basis)
}
