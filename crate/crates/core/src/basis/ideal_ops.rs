//! Elimination, intersection, colon ideals and saturation.

use super::{compute_basis, BasisResult, Limits};
use crate::error::{Error, Result};
use crate::poly::{Ideal, MonomialOrder, Polynomial};

/// `I ∩ K[variables outside block]`, through a block elimination ordering.
pub fn eliminate(ideal: &Ideal, block: &[usize], limits: Limits) -> Result<Ideal> {
    let ring = ideal.ring();
    if block.is_empty() {
        return Ok(ideal.clone());
    }
    let mut mask = vec![false; ring.nvars()];
    for &i in block {
        if i >= ring.nvars() {
            return Err(Error::Input("elimination variable out of range".into()));
        }
        mask[i] = true;
    }
    let gb = compute_basis(ideal, &MonomialOrder::elimination(mask), limits)?;
    let kept = gb
        .basis()
        .iter()
        .filter(|g| block.iter().all(|&i| g.degree_in_var(i) == 0))
        .cloned()
        .collect();
    Ideal::new(ring, kept)
}

/// `I ∩ J`, eliminating `w` from `w I + (1 - w) J`.
pub fn intersect(a: &Ideal, b: &Ideal, limits: Limits) -> Result<Ideal> {
    let ring = a.ring();
    if !b.ring().same_variables(ring) {
        return Err(Error::RingMismatch);
    }
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let ext = ring.extended(&["w"]);
    let w = Polynomial::var(&ext, ring.nvars());
    let one_minus_w = &Polynomial::one(&ext) - &w;
    let mut gens = Vec::new();
    for g in a.gens() {
        gens.push(&g.map_to(&ext)? * &w);
    }
    for g in b.gens() {
        gens.push(&g.map_to(&ext)? * &one_minus_w);
    }
    let e = eliminate(&Ideal::new(&ext, gens)?, &[ring.nvars()], limits)?;
    e.map_to(ring)
}

/// `I : g`.
pub fn colon_poly(ideal: &Ideal, g: &Polynomial, limits: Limits) -> Result<Ideal> {
    let ring = ideal.ring();
    if g.is_zero() {
        return Ok(Ideal::unit(ring));
    }
    let principal = Ideal::new(ring, vec![g.clone()])?;
    let meet = intersect(ideal, &principal, limits)?;
    let gens = meet
        .gens()
        .iter()
        .map(|h| {
            h.div_exact(g)
                .ok_or_else(|| Error::Input("internal error: inexact division in colon".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

/// `I : J`.
pub fn colon(ideal: &Ideal, j: &Ideal, limits: Limits) -> Result<Ideal> {
    let mut acc: Option<Ideal> = None;
    for g in j.gens() {
        let q = colon_poly(ideal, g, limits)?;
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(&a, &q, limits)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal::unit(ideal.ring())))
}

fn groebner(ideal: &Ideal, limits: Limits) -> Result<BasisResult> {
    compute_basis(ideal, &MonomialOrder::DegRevLex, limits)
}

/// `I : g^∞` by iterated colon ideals until the chain stabilizes.
pub fn saturate_poly(ideal: &Ideal, g: &Polynomial, limits: Limits) -> Result<Ideal> {
    let mut current = groebner(ideal, limits)?;
    loop {
        if current.is_unit() {
            return Ok(current.ideal());
        }
        let next = colon_poly(&current.ideal(), g, limits)?;
        if current.contains_ideal(&next)? {
            return Ok(current.ideal());
        }
        current = groebner(&next, limits)?;
    }
}

/// `I : x_var^∞`.
pub fn saturate_var(ideal: &Ideal, var: usize, limits: Limits) -> Result<Ideal> {
    saturate_poly(ideal, &Polynomial::var(ideal.ring(), var), limits)
}

/// `I : J^∞ = ⋂_g I : g^∞` over the generators of `J`.
pub fn saturate(ideal: &Ideal, j: &Ideal, limits: Limits) -> Result<Ideal> {
    let ring = ideal.ring();
    if !j.ring().same_variables(ring) {
        return Err(Error::RingMismatch);
    }
    if j.is_zero() {
        return Ok(Ideal::unit(ring));
    }
    let mut acc: Option<Ideal> = None;
    for g in j.gens() {
        if g.is_constant() {
            return Ok(groebner(ideal, limits)?.ideal());
        }
        let s = saturate_poly(ideal, g, limits)?;
        acc = Some(match acc {
            None => s,
            Some(a) => intersect(&a, &s, limits)?,
        });
    }
    Ok(groebner(&acc.expect("nonempty"), limits)?.ideal())
}

/// `I : g^∞` in the local ring at the origin: eliminate `s` from
/// `I + (1 - s g)` under an ordering global in `s` and `ds` on the rest.
pub fn local_saturate_poly(ideal: &Ideal, g: &Polynomial, limits: Limits) -> Result<Ideal> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if g.is_zero() {
        return Ok(Ideal::unit(ring));
    }
    let ext = ring.extended(&["s"]);
    let s = Polynomial::var(&ext, n);
    let mut gens = ideal.gens().iter().map(|f| f.map_to(&ext)).collect::<Result<Vec<_>>>()?;
    gens.push(&Polynomial::one(&ext) - &(&s * &g.map_to(&ext)?));
    let mut block = vec![false; n + 1];
    block[n] = true;
    let sb = compute_basis(&Ideal::new(&ext, gens)?, &MonomialOrder::local_elimination(block), limits)?;
    let kept = sb
        .basis()
        .iter()
        .filter(|f| f.degree_in_var(n) == 0)
        .map(|f| f.map_to(ring))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, kept)
}

/// Equality of ideals of the polynomial ring (reduced Gröbner bases agree).
pub fn ideals_equal(a: &Ideal, b: &Ideal, limits: Limits) -> Result<bool> {
    if !a.ring().same_variables(b.ring()) {
        return Err(Error::RingMismatch);
    }
    let ga = groebner(a, limits)?;
    let gb = groebner(b, limits)?;
    Ok(ga.basis() == gb.basis())
}

/// `J ⊆ I` in the local ring at the origin.
pub fn local_contains(i: &Ideal, j: &Ideal, limits: Limits) -> Result<bool> {
    let sb = compute_basis(i, &MonomialOrder::NegDegRevLex, limits)?;
    sb.contains_ideal(j)
}

/// Equality of the localizations at the origin.
pub fn local_equal(a: &Ideal, b: &Ideal, limits: Limits) -> Result<bool> {
    Ok(local_contains(a, b, limits)? && local_contains(b, a, limits)?)
}
