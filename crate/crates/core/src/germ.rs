//! Invariants of a germ at the origin: tangent and normal cones, multiplicity,
//! the specialization to the tangent cone, Milnor numbers and their sequence.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::basis::{compute_basis, hilbert, ideals_equal, BasisResult, Limits};
use crate::error::{Error, Result};
use crate::generic::{certify, Draw, GenericityRecord};
use crate::poly::{Coeff, Filtration, Ideal, Locus, Monomial, MonomialOrder, Polynomial, RingContext};
use crate::Config;

/// Standard basis for `ds`: the local ring at the origin.
pub fn local_basis(ideal: &Ideal, limits: Limits) -> Result<BasisResult> {
    compute_basis(ideal, &MonomialOrder::NegDegRevLex, limits)
}

fn proper_local_basis(ideal: &Ideal, limits: Limits) -> Result<BasisResult> {
    let sb = local_basis(ideal, limits)?;
    if sb.is_unit() {
        return Err(Error::precondition("the ideal is the unit ideal at the origin (empty germ)"));
    }
    Ok(sb)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "axis")]
pub enum ConeKind {
    TangentCone,
    /// Normal cone along the coordinate subspace spanned by these variables.
    NormalCone(Vec<String>),
}

#[derive(Clone, Debug)]
pub struct ConeIdeal {
    pub ideal: Ideal,
    pub kind: ConeKind,
}

fn reduced_presentation(gens: Vec<Polynomial>, ring: &Arc<RingContext>, limits: Limits) -> Result<Ideal> {
    let ideal = Ideal::new(ring, gens)?;
    Ok(compute_basis(&ideal, &MonomialOrder::DegRevLex, limits)?.ideal())
}

/// Ideal of initial forms of a local standard basis.
pub fn tangent_cone(ideal: &Ideal, limits: Limits) -> Result<ConeIdeal> {
    let sb = proper_local_basis(ideal, limits)?;
    Ok(ConeIdeal {
        ideal: cone_of_basis(&sb, limits)?,
        kind: ConeKind::TangentCone,
    })
}

fn cone_of_basis(sb: &BasisResult, limits: Limits) -> Result<Ideal> {
    let forms = sb
        .basis()
        .iter()
        .map(|f| f.initial_form(&Filtration::Origin))
        .collect::<Result<Vec<_>>>()?;
    reduced_presentation(forms, sb.ring(), limits)
}

/// Normal cone along the coordinate subspace `Y` spanned by `axis`: the
/// initial forms, for the filtration by powers of the ideal of `Y`, of a
/// standard basis for an ordering refining that filtration.
pub fn normal_cone(ideal: &Ideal, axis: &[usize], limits: Limits) -> Result<ConeIdeal> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let normal: Vec<bool> = (0..n).map(|i| !axis.contains(&i)).collect();
    let on_axis = |g: &Polynomial| {
        g.terms()
            .iter()
            .all(|(m, _)| (0..n).any(|i| normal[i] && m.exponents()[i] > 0))
    };
    if let Some(g) = ideal.gens().iter().find(|g| !on_axis(g)) {
        return Err(Error::precondition(format!(
            "the axis is not contained in the zero set: generator {g} does not vanish on it"
        )));
    }
    let sb = compute_basis(ideal, &MonomialOrder::normal_filtration(&normal), limits)?;
    if sb.is_unit() {
        return Err(Error::precondition("the ideal is the unit ideal at the origin"));
    }
    let filtration = Filtration::Subspace(normal);
    let forms = sb
        .basis()
        .iter()
        .map(|f| f.initial_form(&filtration))
        .collect::<Result<Vec<_>>>()?;
    let names = axis.iter().map(|&i| ring.var_name(i).to_string()).collect();
    Ok(ConeIdeal {
        ideal: reduced_presentation(forms, ring, limits)?,
        kind: ConeKind::NormalCone(names),
    })
}

/// Multiplicity at the origin: `Q(1)` of the Hilbert series of the tangent
/// cone.
pub fn multiplicity(ideal: &Ideal, limits: Limits) -> Result<u64> {
    let sb = proper_local_basis(ideal, limits)?;
    multiplicity_of_basis(&sb, limits)
}

/// Multiplicity from a `ds` standard basis of a proper ideal.
pub fn multiplicity_of_basis(sb: &BasisResult, limits: Limits) -> Result<u64> {
    let cone = cone_of_basis(sb, limits)?;
    Ok(hilbert(&cone, limits)?.multiplicity as u64)
}

/// Multiplicity at the origin, `0` when the germ is empty.
pub fn multiplicity_or_zero(ideal: &Ideal, limits: Limits) -> Result<u64> {
    let sb = local_basis(ideal, limits)?;
    if sb.is_unit() {
        return Ok(0);
    }
    multiplicity_of_basis(&sb, limits)
}

/// Dimension of the germ at the origin, `-1` when empty.
pub fn local_dimension(ideal: &Ideal, limits: Limits) -> Result<i64> {
    Ok(local_basis(ideal, limits)?.dimension())
}

/// The family `F_i = v^{-m_i} f_i(v z)` built on a standard basis `{f_i}`;
/// its fiber over `v = 1` is the germ and over `v = 0` the tangent cone.
#[derive(Clone, Debug)]
pub struct FamilyPresentation {
    pub ideal: Ideal,
    /// Index of the parameter `v` in the family ring.
    pub parameter: usize,
    source: Arc<RingContext>,
}

impl FamilyPresentation {
    pub fn source_ring(&self) -> &Arc<RingContext> {
        &self.source
    }

    pub fn fiber(&self, value: &Coeff) -> Result<Ideal> {
        let gens = self
            .ideal
            .gens()
            .iter()
            .map(|g| g.evaluate_var(self.parameter, value).map_to(&self.source))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.source, gens)
    }
}

fn fresh_name(ring: &RingContext, base: &str) -> String {
    let mut name = base.to_string();
    while ring.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

pub fn specialization_family(ideal: &Ideal, limits: Limits) -> Result<FamilyPresentation> {
    let sb = proper_local_basis(ideal, limits)?;
    let src = ideal.ring();
    let v = fresh_name(src, "v");
    let mut names = vec![v.clone()];
    names.extend(src.var_names().iter().cloned());
    let ring = RingContext::new(&names, Locus::Local)?.with_axis(&[v])?;
    let n = ring.nvars();
    let gens = sb
        .basis()
        .iter()
        .map(|f| {
            let m = f.order().expect("nonzero");
            let terms = f
                .terms()
                .iter()
                .map(|(mono, c)| {
                    let mut e = vec![mono.degree() - m];
                    e.extend_from_slice(mono.exponents());
                    (Monomial::from_exponents(&e), c.clone())
                })
                .collect();
            Polynomial::from_terms(&ring, terms)
        })
        .collect();
    debug_assert_eq!(n, src.nvars() + 1);
    Ok(FamilyPresentation {
        ideal: Ideal::new(&ring, gens)?,
        parameter: 0,
        source: src.clone(),
    })
}

/// Checks the two fibers of the specialization family: `v = 0` gives the
/// tangent cone and `v = 1` the germ.
pub fn check_specialization(ideal: &Ideal, family: &FamilyPresentation, limits: Limits) -> Result<bool> {
    let cone = tangent_cone(ideal, limits)?;
    let f0 = family.fiber(&Coeff::from_integer(0.into()))?;
    let f1 = family.fiber(&Coeff::from_integer(1.into()))?;
    Ok(ideals_equal(&f0, &cone.ideal, limits)? && crate::basis::local_equal(&f1, ideal, limits)?)
}

/// Milnor number, with `Infinite` for non-isolated singularities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MilnorNumber {
    Finite(u64),
    Infinite,
}

impl MilnorNumber {
    pub fn finite(self) -> Option<u64> {
        match self {
            MilnorNumber::Finite(v) => Some(v),
            MilnorNumber::Infinite => None,
        }
    }
}

impl fmt::Display for MilnorNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MilnorNumber::Finite(v) => write!(f, "{v}"),
            MilnorNumber::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for MilnorNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MilnorNumber::Finite(v) => s.serialize_u64(*v),
            MilnorNumber::Infinite => s.serialize_str("infinity"),
        }
    }
}

pub fn jacobian_ideal(f: &Polynomial) -> Result<Ideal> {
    let ring = f.ring();
    Ideal::new(ring, (0..ring.nvars()).map(|i| f.derivative(i)).collect())
}

/// Colength of the Jacobian ideal in the local ring at the origin.
pub fn milnor(f: &Polynomial, limits: Limits) -> Result<MilnorNumber> {
    let j = jacobian_ideal(f)?;
    if j.is_zero() {
        return Ok(MilnorNumber::Infinite);
    }
    let sb = local_basis(&j, limits)?;
    if sb.dimension() > 0 {
        return Ok(MilnorNumber::Infinite);
    }
    Ok(MilnorNumber::Finite(sb.colength()?))
}

/// Restriction of `f` to the `i`-plane `z_j = sum_{k<i} a_jk z_k` (`j >= i`),
/// a polynomial in the first `i` variables.
pub fn generic_section(f: &Polynomial, i: usize, draw: &mut Draw) -> Result<Polynomial> {
    let ring = f.ring();
    let n = ring.nvars();
    let keep: Vec<usize> = (0..i).collect();
    let sub = ring.restricted(&keep);
    let images = (0..n)
        .map(|j| {
            if j < i {
                Polynomial::var(&sub, j)
            } else {
                let mut acc = Polynomial::zero(&sub);
                for k in 0..i {
                    acc = &acc + &Polynomial::var(&sub, k).scale(&draw.coeff());
                }
                acc
            }
        })
        .collect::<Vec<_>>();
    f.substitute(&sub, &images)
}

#[derive(Clone, Debug, Serialize)]
pub struct MilnorSequence {
    /// `mu[i]` is the Milnor number of a general `i`-dimensional section.
    pub mu: Vec<MilnorNumber>,
    pub records: Vec<GenericityRecord>,
}

impl MilnorSequence {
    pub fn values(&self) -> Vec<u64> {
        self.mu.iter().map(|m| m.finite().expect("isolated")).collect()
    }
}

/// `(mu^(0), ..., mu^(n))` for `f` in `n` variables with an isolated
/// singularity at the origin.
pub fn milnor_sequence(f: &Polynomial, config: &Config) -> Result<MilnorSequence> {
    let n = f.ring().nvars();
    let top = milnor(f, config.limits)?;
    if top == MilnorNumber::Infinite {
        return Err(Error::precondition("the singularity is not isolated (Milnor number is infinite)"));
    }
    let mut mu = vec![MilnorNumber::Finite(1)];
    let mut records = vec![GenericityRecord::exact()];
    for i in 1..n {
        let (m, rec) = certify(&config.policy, |seed, height| {
            let mut draw = Draw::new(seed, i as u64, height);
            let section = generic_section(f, i, &mut draw)?;
            milnor(&section, config.limits)
        })?;
        mu.push(m);
        records.push(rec);
    }
    mu.push(top);
    records.push(GenericityRecord::exact());
    Ok(MilnorSequence { mu, records })
}
