use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::ring::RingContext;
use super::Coeff;
use crate::error::{Error, Result};

/// Graded reverse lexicographic comparison, the canonical storage order.
pub(crate) fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    let (ea, eb) = (a.exponents(), b.exponents());
    a.degree().cmp(&b.degree()).then_with(|| {
        for i in (0..ea.len()).rev() {
            if ea[i] != eb[i] {
                return eb[i].cmp(&ea[i]);
            }
        }
        Ordering::Equal
    })
}

/// Which filtration an initial form is taken with respect to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Filtration {
    /// Powers of the maximal ideal at the origin.
    Origin,
    /// Powers of the ideal generated by the flagged variables.
    Subspace(Vec<bool>),
    /// Weighted degree; the initial form is the part of lowest weight.
    Weights(Vec<i64>),
}

impl Filtration {
    fn weight(&self, m: &Monomial) -> i64 {
        match self {
            Filtration::Origin => m.degree() as i64,
            Filtration::Subspace(mask) => m.degree_in(mask) as i64,
            Filtration::Weights(w) => m
                .exponents()
                .iter()
                .zip(w)
                .map(|(&e, &wi)| e as i64 * wi)
                .sum(),
        }
    }
}

/// Sparse polynomial with rational coefficients.
///
/// Terms are kept sorted by descending degrevlex with no zero coefficients, so
/// structural equality is mathematical equality.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<RingContext>,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_variables(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<RingContext>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<RingContext>) -> Self {
        Self::constant(ring, Coeff::one())
    }

    pub fn constant(ring: &Arc<RingContext>, c: Coeff) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_int(ring: &Arc<RingContext>, c: i64) -> Self {
        Self::constant(ring, Coeff::from_integer(c.into()))
    }

    pub fn var(ring: &Arc<RingContext>, index: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), index, 1), Coeff::one())
    }

    pub fn var_named(ring: &Arc<RingContext>, name: &str) -> Result<Self> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ring, i))
    }

    pub fn term(ring: &Arc<RingContext>, m: Monomial, c: Coeff) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Build from arbitrary terms: sorts, merges repeated monomials and drops
    /// zero coefficients.
    pub fn from_terms(ring: &Arc<RingContext>, mut terms: Vec<(Monomial, Coeff)>) -> Self {
        terms.sort_by(|a, b| grevlex(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|t| t.1.is_zero()) {
            out.pop();
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    /// Terms in descending degrevlex order.
    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> Coeff {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Coeff::zero(),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms
            .binary_search_by(|(t, _)| grevlex(m, t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Coeff::zero())
    }

    /// Highest total degree of a term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Lowest total degree of a term (the order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.last().map(|(m, _)| m.degree())
    }

    /// Largest exponent of variable `i`.
    pub fn degree_in_var(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponents()[i]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.order()
    }

    /// Leading term with respect to `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Coeff)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring.same_variables(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match grevlex(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Coeff::zero) += ca * cb;
            }
        }
        Self::from_terms(&self.ring, acc.into_iter().collect())
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * m * self`; multiplying by a monomial preserves degrevlex order.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.product(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.product(&base);
            }
        }
        result
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponents()[var] > 0)
            .map(|(m, c)| {
                let e = m.exponents()[var];
                let mut d = m.clone();
                d.exps_mut()[var] -= 1;
                (d, c * Coeff::from_integer(e.into()))
            })
            .collect();
        Self::from_terms(&self.ring, terms)
    }

    /// Replace variable `i` by `images[i]`, all images living in `target`.
    pub fn substitute(&self, target: &Arc<RingContext>, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Input(format!(
                "substitution needs {} images, got {}",
                self.ring.nvars(),
                images.len()
            )));
        }
        for img in images {
            if !img.ring.same_variables(target) {
                return Err(Error::RingMismatch);
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Self::one(target), p.clone()]).collect();
        let mut acc = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table[table.len() - 1].product(&table[1]);
                    table.push(next);
                }
                t = t.product(&table[e as usize]);
                if t.is_zero() {
                    break;
                }
            }
            acc = acc.merge(&t, false);
        }
        Ok(acc)
    }

    /// Substitute by variable name; unassigned variables are kept.
    pub fn substitute_named(&self, assignment: &[(&str, Polynomial)]) -> Result<Polynomial> {
        let mut images: Vec<Polynomial> = (0..self.ring.nvars()).map(|i| Self::var(&self.ring, i)).collect();
        for (name, img) in assignment {
            let i = self
                .ring
                .index_of(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            self.check_ring(img)?;
            images[i] = img.clone();
        }
        self.substitute(&self.ring, &images)
    }

    /// Set variable `var` to the constant `value`.
    pub fn evaluate_var(&self, var: usize, value: &Coeff) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e = m.exponents()[var];
                let mut m = m.clone();
                m.exps_mut()[var] = 0;
                (m, c * num_traits::pow(value.clone(), e as usize))
            })
            .collect();
        Self::from_terms(&self.ring, terms)
    }

    /// Move to a ring with (a superset of) the variables actually used,
    /// matching variables by name.
    pub fn map_to(&self, target: &Arc<RingContext>) -> Result<Polynomial> {
        let mut map = Vec::with_capacity(self.ring.nvars());
        let used: Vec<bool> = (0..self.ring.nvars()).map(|i| self.degree_in_var(i) > 0).collect();
        for (i, name) in self.ring.var_names().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(j),
                None if !used[i] => map.push(usize::MAX),
                None => return Err(Error::UnknownVariable(name.clone())),
            }
        }
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Monomial::one(n);
                for (i, &k) in m.exponents().iter().enumerate() {
                    if k > 0 {
                        e.exps_mut()[map[i]] += k;
                    }
                }
                (e, c.clone())
            })
            .collect();
        Ok(Self::from_terms(target, terms))
    }

    /// Same terms, tagged with an equivalent ring (same variable names).
    pub fn with_ring(&self, ring: &Arc<RingContext>) -> Polynomial {
        assert!(self.ring.same_variables(ring), "ring with different variables");
        Polynomial {
            ring: ring.clone(),
            terms: self.terms.clone(),
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == degree).cloned().collect(),
        }
    }

    /// Lowest part with respect to the filtration.
    pub fn initial_form(&self, filtration: &Filtration) -> Result<Polynomial> {
        let low = self
            .terms
            .iter()
            .map(|(m, _)| filtration.weight(m))
            .min()
            .ok_or_else(|| Error::precondition("initial form of the zero polynomial"))?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| filtration.weight(m) == low)
                .cloned()
                .collect(),
        })
    }

    /// Order with respect to the filtration (lowest weight of a term).
    pub fn filtration_order(&self, filtration: &Filtration) -> Option<i64> {
        self.terms.iter().map(|(m, _)| filtration.weight(m)).min()
    }

    /// Divide by the leading coefficient for `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Integer multiple with coprime integer coefficients and positive leading
    /// coefficient (in canonical order).
    pub fn primitive_integer(&self) -> Vec<(Monomial, BigInt)> {
        if self.terms.is_empty() {
            return Vec::new();
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let mut ints: Vec<(Monomial, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom())))
            .collect();
        let mut g = BigInt::zero();
        for (_, c) in &ints {
            g = g.gcd(c);
        }
        if ints[0].1.is_negative() {
            g = -g;
        }
        for t in ints.iter_mut() {
            t.1 = &t.1 / &g;
        }
        ints
    }

    /// `self / g` when `g` divides `self` exactly.
    pub fn div_exact(&self, g: &Polynomial) -> Option<Polynomial> {
        if g.is_zero() {
            return None;
        }
        let (gm, gc) = &g.terms[0];
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = r.terms.first() {
            let t = gm.quotient_of(m)?;
            let k = c / gc;
            r = r.merge(&g.mul_term(&t, &k), true);
            q.push((t, k));
        }
        Some(Polynomial::from_terms(&self.ring, q))
    }

    /// The variables that occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&i| self.degree_in_var(i) > 0).collect()
    }

    /// Format with terms in the descending order given.
    pub fn display_with(&self, order: &MonomialOrder) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut sorted: Vec<&(Monomial, Coeff)> = self.terms.iter().collect();
        sorted.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut s = String::new();
        for (k, (m, c)) in sorted.into_iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono = format_monomial(&self.ring, m);
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&a.to_string());
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }
}

fn format_monomial(ring: &RingContext, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.var_name(i).to_string()),
            _ => parts.push(format!("{}^{}", ring.var_name(i), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&self.ring.default_order()))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics when the operands live in rings with different variables.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$try(rhs).expect("polynomial ring mismatch")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ring::Locus;

    fn ring() -> Arc<RingContext> {
        RingContext::new(&["x", "y", "z"], Locus::Local).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        assert_eq!(&(&x + &y) + &(&x - &y), x.scale(&Coeff::from_integer(2.into())));
        let a = &y - &x.pow(2);
        let b = &y + &x.pow(2);
        assert_eq!(&a * &b, &y.pow(2) - &x.pow(4));
        assert_eq!(&a + &Polynomial::zero(&r), a);
    }

    #[test]
    fn substitution_and_initial_forms() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let z = Polynomial::var(&r, 2);
        let f = &x.pow(2) - &(&y.pow(2) * &z);
        let g = f.substitute_named(&[("z", Polynomial::zero(&r))]).unwrap();
        assert_eq!(g, x.pow(2));
        let two_y = y.scale(&Coeff::from_integer(2.into()));
        let h = x.pow(2).substitute_named(&[("x", &x + &two_y)]).unwrap();
        assert_eq!(h.to_string(), "x^2 + 4*x*y + 4*y^2");
        assert!(f.substitute_named(&[("w", x.clone())]).is_err());
        assert_eq!(f.initial_form(&Filtration::Origin).unwrap(), x.pow(2));
        let along_z = Filtration::Subspace(vec![true, true, false]);
        assert_eq!(f.initial_form(&along_z).unwrap(), f);
        let along_y = Filtration::Subspace(vec![true, false, true]);
        assert_eq!(f.initial_form(&along_y).unwrap(), -(&y.pow(2) * &z));
        assert!(Polynomial::zero(&r).initial_form(&Filtration::Origin).is_err());
    }

    #[test]
    fn display_uses_active_order() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let f = &y.pow(2) - &x.pow(3);
        assert_eq!(f.to_string(), "y^2 - x^3");
        let ra = r.with_locus(Locus::Affine);
        assert_eq!(f.with_ring(&ra).to_string(), "-x^3 + y^2");
        let c = Polynomial::constant(&r, Coeff::new((-1).into(), 16.into()));
        assert_eq!((&c * &x).to_string(), "-1/16*x");
    }

    #[test]
    fn mismatch_is_reported() {
        let r = ring();
        let s = RingContext::new(&["a"], Locus::Local).unwrap();
        let p = Polynomial::var(&r, 0);
        let q = Polynomial::var(&s, 0);
        assert_eq!(p.try_add(&q), Err(Error::RingMismatch));
    }
}
