//! Gröbner and standard bases, normal forms, elimination, saturation,
//! dimension, colength and Hilbert series.

mod engine;
mod hilbert;
mod ideal_ops;
mod ipoly;

use std::sync::Arc;

use serde::Serialize;

pub use hilbert::{colength_of_monomials, dimension_of_monomials, hilbert_of_monomials, HilbertData};
pub use ideal_ops::{
    colon, colon_poly, eliminate, ideals_equal, intersect, local_contains, local_equal, local_saturate_poly, saturate,
    saturate_poly, saturate_var,
};

use crate::error::{Error, Result};
use crate::poly::{Coeff, Ideal, Monomial, MonomialOrder, Polynomial, RingContext};
use engine::Counter;
use ipoly::{Fp, IPoly};

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

/// Resource limits for a single basis computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub steps: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            steps: DEFAULT_STEP_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisKind {
    Groebner,
    Standard,
}

/// A Gröbner basis (global ordering) or standard basis (local or mixed
/// ordering). Gröbner bases are reduced; standard bases are minimal. All
/// elements are monic.
#[derive(Clone, Debug)]
pub struct BasisResult {
    ring: Arc<RingContext>,
    basis: Vec<Polynomial>,
    order: MonomialOrder,
    kind: BasisKind,
    work: Vec<IPoly>,
    /// For standard bases, the Gröbner basis of the homogenized generators
    /// that `work` was dehomogenized from.
    homogeneous: Vec<IPoly>,
}

impl BasisResult {
    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn is_reduced(&self) -> bool {
        self.kind == BasisKind::Groebner
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.basis.clone()).expect("same ring")
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.work.iter().map(|p| p.lm().clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.work.iter().any(|p| p.lm().is_one())
    }

    /// Remainder of `p`; for standard bases, up to a unit factor.
    pub fn normal_form(&self, p: &Polynomial, limits: Limits) -> Result<Polynomial> {
        if !p.ring().same_variables(&self.ring) {
            return Err(Error::RingMismatch);
        }
        let refs: Vec<&IPoly> = self.work.iter().collect();
        let mut counter = Counter::new(limits.steps);
        let (f, mut scale) = IPoly::from_poly_with_factor(p, &self.order);
        let r = match self.kind {
            BasisKind::Groebner => engine::full_reduce(f, &refs, &self.order, &mut counter, Some(&mut scale))?,
            BasisKind::Standard => engine::mora_reduce(f, &refs, &self.order, &mut counter, Some(&mut scale))?,
        };
        Ok(unscale(&r, &scale, &self.ring))
    }

    /// Membership in the ideal (in the localization for standard bases).
    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p, Limits::default())?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in other.gens() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Krull dimension of the quotient (at the origin for local orderings);
    /// `-1` for the unit ideal.
    pub fn dimension(&self) -> i64 {
        dimension_of_monomials(&self.leading_monomials(), self.ring.nvars())
    }

    /// Vector-space dimension of the quotient.
    pub fn colength(&self) -> Result<u64> {
        colength_of_monomials(&self.leading_monomials(), self.ring.nvars())
            .ok_or_else(|| Error::precondition("colength of a positive-dimensional ideal"))
    }

    /// Every S-polynomial of the basis reduces to zero. For a standard basis
    /// the check runs on the homogeneous Gröbner basis it was obtained from,
    /// for the homogenized ordering.
    pub fn is_confluent(&self, limits: Limits) -> Result<bool> {
        let (order, work) = match self.kind {
            BasisKind::Groebner => (self.order.clone(), &self.work),
            BasisKind::Standard => (MonomialOrder::Homogenized(Box::new(self.order.clone())), &self.homogeneous),
        };
        let refs: Vec<&IPoly> = work.iter().collect();
        let mut counter = Counter::new(limits.steps);
        for i in 0..work.len() {
            for j in i + 1..work.len() {
                let (a, b) = (work[i].lm(), work[j].lm());
                // product and strict chain criteria
                if a.is_coprime(b) {
                    continue;
                }
                let lcm = a.lcm(b);
                let chained = (0..work.len()).any(|k| {
                    let c = work[k].lm();
                    k != i && k != j && c.divides(&lcm) && a.lcm(c) != lcm && b.lcm(c) != lcm
                });
                if chained {
                    continue;
                }
                let s = IPoly::spoly(&work[i], &work[j], &order);
                if !engine::top_reduce(s, &refs, &order, &mut counter)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Gröbner basis for global orderings, standard basis otherwise.
pub fn compute_basis(ideal: &Ideal, order: &MonomialOrder, limits: Limits) -> Result<BasisResult> {
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    if !order.fits(n) {
        return Err(Error::Input("monomial ordering does not match the ring".into()));
    }
    let global = order.is_global(n);
    let gens: Vec<IPoly> = ideal.gens().iter().map(|g| IPoly::from_poly(g, order)).collect();
    let mut counter = Counter::new(limits.steps);
    let (work, homogeneous) = if global || gens.iter().any(|g| !g.is_zero() && g.lm().is_one()) {
        (engine::complete(gens, order, !global, &mut counter)?, Vec::new())
    } else {
        let h = engine::homogeneous_basis(&gens, order, &mut counter)?;
        (engine::dehomogenized_basis(&h, order), h)
    };
    let basis = work.iter().map(|p| p.to_poly(&ring)).collect();
    Ok(BasisResult {
        ring,
        basis,
        order: order.clone(),
        kind: if global {
            BasisKind::Groebner
        } else {
            BasisKind::Standard
        },
        work,
        homogeneous,
    })
}

/// Runs the computation for both primes concurrently.
fn for_both_primes<T: Send>(
    first: impl FnOnce() -> Result<Option<T>> + Send,
    second: impl FnOnce() -> Result<Option<T>> + Send,
) -> Result<(Option<T>, Option<T>)> {
    std::thread::scope(|scope| {
        let handle = scope.spawn(second);
        let a = first()?;
        let b = handle.join().expect("modular worker panicked")?;
        Ok((a, b))
    })
}

/// Primes for modular basis computations.
pub const MODULAR_PRIMES: [u64; 2] = [(1 << 61) - 1, (1 << 62) - 57];

fn leading_monomials_mod<const P: u64>(ideal: &Ideal, order: &MonomialOrder, limits: Limits) -> Result<Option<Vec<Monomial>>> {
    let mut gens = Vec::with_capacity(ideal.gens().len());
    for g in ideal.gens().iter().filter(|g| !g.is_zero()) {
        match IPoly::<Fp<P>>::from_poly_mod(g, order) {
            Some(q) if !q.is_zero() => gens.push(q),
            _ => return Ok(None),
        }
    }
    let mut counter = Counter::new(limits.steps);
    let work = engine::complete(gens, order, !order.is_global(ideal.ring().nvars()), &mut counter)?;
    let mut lms: Vec<Monomial> = work.iter().map(|p| p.lm().clone()).collect();
    lms.sort_by(|a, b| a.exponents().cmp(b.exponents()));
    Ok(Some(lms))
}

/// Leading monomials of a Gröbner or standard basis of `ideal`. The basis is
/// computed modulo each of [`MODULAR_PRIMES`]; when a generator does not
/// survive reduction or the two leading ideals differ, the computation is
/// repeated over the rationals.
pub fn modular_leading_monomials(ideal: &Ideal, order: &MonomialOrder, limits: Limits) -> Result<Vec<Monomial>> {
    if !order.fits(ideal.ring().nvars()) {
        return Err(Error::Input("monomial ordering does not match the ring".into()));
    }
    let pair = for_both_primes(
        || leading_monomials_mod::<{ MODULAR_PRIMES[0] }>(ideal, order, limits),
        || leading_monomials_mod::<{ MODULAR_PRIMES[1] }>(ideal, order, limits),
    )?;
    match pair {
        (Some(a), Some(b)) if a == b => Ok(a),
        _ => Ok(compute_basis(ideal, order, limits)?.leading_monomials()),
    }
}

fn variable_saturation_leading_monomials_mod<const P: u64>(
    ideal: &Ideal,
    var: usize,
    order: &MonomialOrder,
    limits: Limits,
) -> Result<Option<Vec<Monomial>>> {
    let n = ideal.ring().nvars();
    let dp = MonomialOrder::DegRevLex;
    let mut gens = Vec::with_capacity(ideal.gens().len());
    for f in ideal.gens().iter().filter(|f| !f.is_zero()) {
        match IPoly::<Fp<P>>::from_poly_mod(f, &dp) {
            Some(q) if !q.is_zero() => gens.push(q),
            _ => return Ok(None),
        }
    }
    let mut counter = Counter::new(limits.steps);
    let gb = engine::complete(gens, &dp, false, &mut counter)?;
    // homogenize with `h`, then arrange the variables as (others, h, var) so
    // that `var` is the smallest for degrevlex
    let arranged = |e: &[u32], h: u32| -> Vec<u32> {
        let mut out: Vec<u32> = (0..n).filter(|&i| i != var).map(|i| e[i]).collect();
        out.push(h);
        out.push(e[var]);
        out
    };
    let homogeneous: Vec<IPoly<Fp<P>>> = gb
        .iter()
        .map(|g| {
            let deg = g.deg;
            g.map_monomials(|e| arranged(e, deg - e.iter().sum::<u32>()), &dp)
        })
        .collect();
    let gb = engine::complete(homogeneous, &dp, false, &mut counter)?;
    // divide by the largest power of `var`, set `h = 1`
    let restore = |e: &[u32], shift: u32| -> Vec<u32> {
        let mut out = Vec::with_capacity(n);
        let mut k = 0;
        for i in 0..n {
            if i == var {
                out.push(e[n] - shift);
            } else {
                out.push(e[k]);
                k += 1;
            }
        }
        out
    };
    let saturated: Vec<IPoly<Fp<P>>> = gb
        .iter()
        .map(|g| {
            let shift = g.terms.iter().map(|(m, _)| m.exponents()[n]).min().unwrap_or(0);
            g.map_monomials(|e| restore(e, shift), order)
        })
        .collect();
    let work = engine::complete(saturated, order, !order.is_global(n), &mut counter)?;
    let mut lms: Vec<Monomial> = work.iter().map(|p| p.lm().clone()).collect();
    lms.sort_by(|a, b| a.exponents().cmp(b.exponents()));
    Ok(Some(lms))
}

/// Leading monomials of a basis of `I : x_var^∞` for `order`, computed
/// modulo each of [`MODULAR_PRIMES`] from a degrevlex Gröbner basis of the
/// homogenization with `x_var` last, where the saturation amounts to
/// dividing out powers of `x_var`. When the images disagree the saturation
/// is computed over the rationals.
pub fn modular_variable_saturation_leading_monomials(
    ideal: &Ideal,
    var: usize,
    order: &MonomialOrder,
    limits: Limits,
) -> Result<Vec<Monomial>> {
    let n = ideal.ring().nvars();
    if !order.fits(n) || var >= n {
        return Err(Error::Input("monomial ordering or variable does not match the ring".into()));
    }
    let pair = for_both_primes(
        || variable_saturation_leading_monomials_mod::<{ MODULAR_PRIMES[0] }>(ideal, var, order, limits),
        || variable_saturation_leading_monomials_mod::<{ MODULAR_PRIMES[1] }>(ideal, var, order, limits),
    )?;
    match pair {
        (Some(a), Some(b)) if a == b => Ok(a),
        _ => {
            let sat = saturate_var(ideal, var, limits)?;
            Ok(compute_basis(&sat, order, limits)?.leading_monomials())
        }
    }
}

/// Basis in the ring's default ordering: `ds` at the origin, `dp` otherwise.
pub fn default_basis(ideal: &Ideal, limits: Limits) -> Result<BasisResult> {
    compute_basis(ideal, &ideal.ring().default_order(), limits)
}

/// Hilbert series of the quotient by a homogeneous ideal, read off the
/// leading ideal of a degrevlex Gröbner basis.
pub fn hilbert(ideal: &Ideal, limits: Limits) -> Result<HilbertData> {
    if !ideal.is_homogeneous() {
        return Err(Error::precondition("Hilbert series of an inhomogeneous ideal"));
    }
    let gb = compute_basis(ideal, &MonomialOrder::DegRevLex, limits)?;
    Ok(hilbert_of_monomials(&gb.leading_monomials(), ideal.ring().nvars()))
}

/// Division of `p` by an arbitrary list; Mora's reduction for non-global
/// orderings (remainder up to a unit).
pub fn normal_form(p: &Polynomial, g: &[Polynomial], order: &MonomialOrder, limits: Limits) -> Result<Polynomial> {
    let ring = p.ring();
    if g.iter().any(|q| !q.ring().same_variables(ring)) {
        return Err(Error::RingMismatch);
    }
    if !order.fits(ring.nvars()) {
        return Err(Error::Input("monomial ordering does not match the ring".into()));
    }
    let work: Vec<IPoly> = g
        .iter()
        .filter(|q| !q.is_zero())
        .map(|q| IPoly::from_poly(q, order))
        .collect();
    let refs: Vec<&IPoly> = work.iter().collect();
    let mut counter = Counter::new(limits.steps);
    let (f, mut scale) = IPoly::from_poly_with_factor(p, order);
    let r = if order.is_global(ring.nvars()) {
        engine::full_reduce(f, &refs, order, &mut counter, Some(&mut scale))?
    } else {
        engine::mora_reduce(f, &refs, order, &mut counter, Some(&mut scale))?
    };
    Ok(unscale(&r, &scale, ring))
}

/// Rational polynomial `r / scale`, so that `p - result` lies in the ideal.
fn unscale(r: &IPoly, scale: &Coeff, ring: &Arc<RingContext>) -> Polynomial {
    let terms = r
        .terms
        .iter()
        .map(|(m, c)| (m.clone(), Coeff::from_integer(c.clone()) / scale))
        .collect();
    Polynomial::from_terms(ring, terms)
}
