//! Working representation for basis computations: terms sorted by the
//! active ordering over a coefficient domain that is either the integers
//! (primitive polynomials) or a prime field (monic polynomials).

use std::cmp::Ordering;
use std::fmt::Debug;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{Coeff, Monomial, MonomialOrder, Polynomial, RingContext};

/// Coefficient domain of the basis engine.
pub(crate) trait Scalar: Clone + Debug + PartialEq {
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    /// `a * x - b * y`.
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Self;
    fn neg_mul(b: &Self, y: &Self) -> Self;
    /// `(a, b)` with `a * c - b * lc = 0`.
    fn cancel(c: &Self, lc: &Self) -> (Self, Self);
    /// Normalize in place (primitive with positive leading coefficient, or
    /// monic); returns the divisor.
    fn normalize(terms: &mut [(Monomial, Self)]) -> Self;
    /// Multiply `scale` by `a / div`; only meaningful over the integers.
    fn track(scale: &mut Coeff, a: &Self, div: &Self);
}

impl Scalar for BigInt {
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Self {
        a * x - b * y
    }
    fn neg_mul(b: &Self, y: &Self) -> Self {
        -(b * y)
    }
    fn cancel(c: &Self, lc: &Self) -> (Self, Self) {
        let d = c.gcd(lc);
        (lc / &d, c / &d)
    }
    fn normalize(terms: &mut [(Monomial, Self)]) -> Self {
        if terms.is_empty() {
            return One::one();
        }
        let mut g = BigInt::zero();
        for (_, c) in terms.iter() {
            g = g.gcd(c);
            if One::is_one(&g) {
                break;
            }
        }
        if terms[0].1.is_negative() {
            g = -g;
        }
        if !One::is_one(&g) {
            for t in terms.iter_mut() {
                t.1 = &t.1 / &g;
            }
        }
        g
    }
    fn track(scale: &mut Coeff, a: &Self, div: &Self) {
        *scale *= Coeff::new(a.clone(), div.clone());
    }
}

/// Residue modulo the prime `P < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    fn mulmod(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    fn pow(self, mut e: u64) -> Self {
        let (mut base, mut acc) = (self.0, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::mulmod(acc, base);
            }
            base = Self::mulmod(base, base);
            e >>= 1;
        }
        Fp(acc)
    }

    pub fn inverse(self) -> Self {
        self.pow(P - 2)
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("reduced"))
    }

    /// Image of a rational number, `None` when `P` divides the denominator.
    pub fn from_coeff(c: &Coeff) -> Option<Self> {
        let d = Self::from_bigint(c.denom());
        (d.0 != 0).then(|| Fp(Self::mulmod(Self::from_bigint(c.numer()).0, d.inverse().0)))
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(Self::mulmod(self.0, other.0))
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Self {
        let l = Self::mulmod(a.0, x.0);
        let r = Self::mulmod(b.0, y.0);
        Fp(if l >= r { l - r } else { P - (r - l) })
    }
    fn neg_mul(b: &Self, y: &Self) -> Self {
        let r = Self::mulmod(b.0, y.0);
        Fp(if r == 0 { 0 } else { P - r })
    }
    fn cancel(c: &Self, lc: &Self) -> (Self, Self) {
        (Fp(1), Fp(Self::mulmod(c.0, lc.inverse().0)))
    }
    fn normalize(terms: &mut [(Monomial, Self)]) -> Self {
        let Some(lead) = terms.first().map(|t| t.1) else {
            return Fp(1);
        };
        if lead.0 != 1 {
            let inv = lead.inverse();
            for t in terms.iter_mut() {
                t.1 = Fp(Self::mulmod(t.1 .0, inv.0));
            }
        }
        lead
    }
    fn track(_: &mut Coeff, _: &Self, _: &Self) {}
}

#[derive(Clone, Debug)]
pub(crate) struct IPoly<S = BigInt> {
    pub terms: Vec<(Monomial, S)>,
    /// Highest total degree among the terms.
    pub deg: u32,
}

impl IPoly<BigInt> {
    pub fn from_poly(p: &Polynomial, order: &MonomialOrder) -> IPoly {
        let mut terms = p.primitive_integer();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut q = IPoly::from_sorted(terms);
        BigInt::normalize(&mut q.terms);
        q
    }

    pub fn to_poly(&self, ring: &Arc<RingContext>) -> Polynomial {
        if self.terms.is_empty() {
            return Polynomial::zero(ring);
        }
        let lc = self.terms[0].1.clone();
        Polynomial::from_terms(
            ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), Coeff::new(c.clone(), lc.clone())))
                .collect(),
        )
    }

    /// `from_poly` together with the factor `lambda` such that the result is
    /// `lambda * p`.
    pub fn from_poly_with_factor(p: &Polynomial, order: &MonomialOrder) -> (IPoly, Coeff) {
        let q = IPoly::from_poly(p, order);
        if q.is_zero() {
            return (q, Coeff::one());
        }
        let factor = Coeff::from_integer(q.lc().clone()) / p.coefficient(q.lm());
        (q, factor)
    }
}

impl<const P: u64> IPoly<Fp<P>> {
    /// Image modulo `P`, `None` when a denominator vanishes.
    pub fn from_poly_mod(p: &Polynomial, order: &MonomialOrder) -> Option<Self> {
        let mut terms = Vec::with_capacity(p.terms().len());
        for (m, c) in p.terms() {
            let v = Fp::<P>::from_coeff(c)?;
            if v.0 != 0 {
                terms.push((m.clone(), v));
            }
        }
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut q = IPoly::from_sorted(terms);
        Fp::normalize(&mut q.terms);
        Some(q)
    }
}

impl<S: Scalar> IPoly<S> {
    pub fn from_sorted(terms: Vec<(Monomial, S)>) -> Self {
        let deg = terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        IPoly { terms, deg }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    #[inline]
    pub fn lc(&self) -> &S {
        &self.terms[0].1
    }

    /// Difference between the total degree and the degree of the leading
    /// monomial.
    pub fn ecart(&self) -> u32 {
        self.deg - self.lm().degree()
    }

    fn recompute_degree(&mut self) {
        self.deg = self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
    }

    /// `a * self - b * m * g`.
    pub fn sub_mul(&self, a: &S, b: &S, m: &Monomial, g: &Self, order: &MonomialOrder) -> Self {
        let (x, y) = (&self.terms, &g.terms);
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        let scale_a = !a.is_one();
        let mut shifted: Option<Monomial> = None;
        while i < x.len() || j < y.len() {
            if j < y.len() && shifted.is_none() {
                shifted = Some(y[j].0.mul(m));
            }
            let ord = match (i < x.len(), &shifted) {
                (true, Some(s)) => order.cmp(&x[i].0, s),
                (true, None) => Ordering::Greater,
                (false, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    let c = if scale_a { a.mul(&x[i].1) } else { x[i].1.clone() };
                    out.push((x[i].0.clone(), c));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((shifted.take().unwrap(), S::neg_mul(b, &y[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = S::mul_sub(a, &x[i].1, b, &y[j].1);
                    let mono = shifted.take().unwrap();
                    if !c.is_zero() {
                        out.push((mono, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        let mut r = IPoly { terms: out, deg: 0 };
        r.recompute_degree();
        r
    }

    /// Cancel the term of `self` at `monomial` (coefficient `c`) against the
    /// leading term of `g`; the result is normalized. When `scale` is given
    /// it is multiplied by the factor the result carries relative to `self`
    /// modulo `g`.
    pub fn reduce_term(&self, c: &S, monomial: &Monomial, g: &Self, order: &MonomialOrder, scale: Option<&mut Coeff>) -> Self {
        let m = g.lm().quotient_of(monomial).expect("divisible");
        let (a, b) = S::cancel(c, g.lc());
        let mut r = self.sub_mul(&a, &b, &m, g, order);
        let div = S::normalize(&mut r.terms);
        if let Some(s) = scale {
            S::track(s, &a, &div);
        }
        r
    }

    /// S-polynomial of two normalized polynomials.
    pub fn spoly(f: &Self, g: &Self, order: &MonomialOrder) -> Self {
        let l = f.lm().lcm(g.lm());
        let mf = f.lm().quotient_of(&l).unwrap();
        let mg = g.lm().quotient_of(&l).unwrap();
        let (a, b) = S::cancel(f.lc(), g.lc());
        let fm = f.mul_monomial(&mf);
        let mut r = fm.sub_mul(&a, &b, &mg, g, order);
        S::normalize(&mut r.terms);
        r
    }

    /// Homogenize with a new trailing variable, sorted by `order` on the
    /// extended monomials.
    pub fn homogenize(&self, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, S)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.push(self.deg - m.degree());
                (Monomial::from_exponents(&e), c.clone())
            })
            .collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        IPoly::from_sorted(terms)
    }

    /// Set the trailing variable to `1`, sorted and normalized for `order`.
    pub fn dehomogenize(&self, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, S)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e = m.exponents();
                (Monomial::from_exponents(&e[..e.len() - 1]), c.clone())
            })
            .collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        S::normalize(&mut terms);
        IPoly::from_sorted(terms)
    }

    /// Apply an injective map to the monomials, then sort and normalize for
    /// `order`.
    pub fn map_monomials(&self, f: impl Fn(&[u32]) -> Vec<u32>, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, S)> = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial::from_exponents(&f(m.exponents())), c.clone()))
            .collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        S::normalize(&mut terms);
        IPoly::from_sorted(terms)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        IPoly {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
            deg: self.deg + m.degree(),
        }
    }
}
