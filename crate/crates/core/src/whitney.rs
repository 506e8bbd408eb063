//! Whitney equisingularity of a family along its parameter axis, decided by
//! equimultiplicity of the general polar varieties, and exceptional cones of
//! a germ.
//!
//! A point `t0` of the axis is examined by translating `t -> t + t0` and
//! localizing at the origin. The verdict only covers the sampled points.

use serde::{Serialize, Serializer};

use crate::basis::{compute_basis, Limits};
use crate::error::{Error, Result};
use crate::generic::Draw;
use crate::germ::{local_dimension, multiplicity, specialization_family, tangent_cone};
use crate::linalg::minors;
use crate::polar::{jacobian_matrix, polar_ideal, polar_profile, PolarProfile, ProjectionFrame};
use crate::poly::{Coeff, Ideal, MonomialOrder, Polynomial};
use crate::Config;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Whitney,
    NotWhitney,
}

#[derive(Clone, Debug, Serialize)]
pub struct WhitneyVerdict {
    pub axis: String,
    /// Nonzero parameter values compared against `t = 0`.
    #[serde(serialize_with = "serialize_coeffs")]
    pub t_samples: Vec<Coeff>,
    /// Profile of the total space at the origin.
    pub profile_at_0: PolarProfile,
    /// Profile of the total space at the first sample.
    pub profile_generic: PolarProfile,
    /// Profiles of the total space at every sample, in order.
    pub sample_profiles: Vec<PolarProfile>,
    /// Profiles of the fiber germs, `t = 0` first.
    pub fiber_profiles: Vec<PolarProfile>,
    pub equimultiple_per_k: Vec<bool>,
    pub multiplicity_equimultiple: bool,
    pub fiber_profiles_constant: bool,
    pub verdict: Verdict,
}

fn serialize_coeffs<S: Serializer>(v: &[Coeff], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

/// The parameter values `1/2, 1, 2`.
pub fn default_samples() -> Vec<Coeff> {
    vec![Coeff::new(1.into(), 2.into()), Coeff::from_integer(1.into()), Coeff::from_integer(2.into())]
}

fn check_axis(ideal: &Ideal, axis: usize) -> Result<()> {
    let ring = ideal.ring();
    if axis >= ring.nvars() {
        return Err(Error::Input(format!("axis index {axis} out of range")));
    }
    let zero = Coeff::from_integer(0.into());
    for g in ideal.gens() {
        let mut r = g.clone();
        for i in (0..ring.nvars()).filter(|&i| i != axis) {
            r = r.evaluate_var(i, &zero);
        }
        if !r.is_zero() {
            return Err(Error::precondition(format!(
                "the {}-axis is not contained in V(I): {g} does not vanish on it",
                ring.var_name(axis)
            )));
        }
    }
    Ok(())
}

fn check_samples(samples: &[Coeff]) -> Result<()> {
    let nonzero: Vec<&Coeff> = samples.iter().filter(|c| **c != Coeff::from_integer(0.into())).collect();
    let distinct = nonzero.iter().enumerate().all(|(i, a)| nonzero[..i].iter().all(|b| a != b));
    if nonzero.len() < 2 || nonzero.len() != samples.len() || !distinct {
        return Err(Error::Input("at least two distinct nonzero parameter samples are required".into()));
    }
    Ok(())
}

/// The germ of `V(I)` at the axis point `t = t0`, moved to the origin.
pub fn translate_along(ideal: &Ideal, axis: usize, t0: &Coeff) -> Result<Ideal> {
    let ring = ideal.ring();
    let images: Vec<Polynomial> = (0..ring.nvars())
        .map(|i| {
            let v = Polynomial::var(ring, i);
            if i == axis {
                &v + &Polynomial::constant(ring, t0.clone())
            } else {
                v
            }
        })
        .collect();
    ideal.substitute(ring, &images)
}

/// The fiber over `t = t0` as an ideal in the remaining variables.
pub fn fiber_at(ideal: &Ideal, axis: usize, t0: &Coeff) -> Result<Ideal> {
    let ring = ideal.ring();
    let keep: Vec<usize> = (0..ring.nvars()).filter(|&i| i != axis).collect();
    let target = ring.restricted(&keep);
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.evaluate_var(axis, t0).map_to(&target))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&target, gens)
}

/// Multiplicity at the origin equals the multiplicity at every sampled axis point.
pub fn equimultiple_along_axis(ideal: &Ideal, axis: usize, samples: &[Coeff], limits: Limits) -> Result<bool> {
    check_axis(ideal, axis)?;
    check_samples(samples)?;
    let m0 = multiplicity(ideal, limits)?;
    for t0 in samples {
        if multiplicity(&translate_along(ideal, axis, t0)?, limits)? != m0 {
            return Ok(false);
        }
    }
    Ok(true)
}

struct PointData {
    total: PolarProfile,
    fiber: PolarProfile,
    fiber_dim: i64,
}

fn point_data(ideal: &Ideal, axis: usize, t0: &Coeff, config: &Config) -> Result<PointData> {
    let total = translate_along(ideal, axis, t0)?;
    let fiber = fiber_at(&total, axis, &Coeff::from_integer(0.into()))?;
    let fiber_dim = local_dimension(&fiber, config.limits)?;
    if fiber_dim < 0 {
        return Err(Error::precondition("empty fiber germ on the axis"));
    }
    Ok(PointData {
        total: polar_profile(&total, config)?,
        fiber: polar_profile(&fiber, config)?,
        fiber_dim,
    })
}

/// Compares the polar profiles of the total space at the origin and at the
/// sampled axis points. A polar variety through the origin which does not
/// contain the axis has positive multiplicity at `0` and zero at the samples,
/// so it shows up as a per-`k` mismatch.
pub fn whitney_family_check(ideal: &Ideal, axis: usize, samples: &[Coeff], config: &Config) -> Result<WhitneyVerdict> {
    check_axis(ideal, axis)?;
    check_samples(samples)?;
    let mut points = vec![Coeff::from_integer(0.into())];
    points.extend(samples.iter().cloned());
    let data: Vec<Result<PointData>> = std::thread::scope(|s| {
        let handles: Vec<_> = points
            .iter()
            .map(|t0| s.spawn(move || point_data(ideal, axis, t0, config)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let data = data.into_iter().collect::<Result<Vec<_>>>()?;
    if data.iter().any(|p| p.fiber_dim != data[0].fiber_dim) {
        let dims: Vec<i64> = data.iter().map(|p| p.fiber_dim).collect();
        return Err(Error::precondition(format!("fiber dimension jumps along the axis: {dims:?}")));
    }
    let at_0 = &data[0].total;
    let equimultiple_per_k: Vec<bool> = (0..at_0.m.len())
        .map(|k| data[1..].iter().all(|p| p.total.m.get(k) == Some(&at_0.m[k])))
        .collect();
    let fiber_profiles_constant = data[1..].iter().all(|p| p.fiber.m == data[0].fiber.m);
    let verdict = if equimultiple_per_k.iter().all(|&b| b) {
        Verdict::Whitney
    } else {
        Verdict::NotWhitney
    };
    let mut data = data.into_iter();
    let first = data.next().expect("origin");
    let rest: Vec<PointData> = data.collect();
    let mut fiber_profiles = vec![first.fiber];
    fiber_profiles.extend(rest.iter().map(|p| p.fiber.clone()));
    Ok(WhitneyVerdict {
        axis: ideal.ring().var_name(axis).to_string(),
        t_samples: samples.to_vec(),
        profile_generic: rest[0].total.clone(),
        sample_profiles: rest.into_iter().map(|p| p.total).collect(),
        multiplicity_equimultiple: equimultiple_per_k[0],
        profile_at_0: first.total,
        fiber_profiles,
        equimultiple_per_k,
        fiber_profiles_constant,
        verdict,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExceptionalMethod {
    SpecializationWhitney,
    FixedPart,
}

/// How reducedness of the tangent cone was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reducedness {
    /// Principal cone whose generator is squarefree.
    Squarefree,
    /// Jacobian criterion on the top-dimensional components.
    GenericallyReduced,
    NotReduced,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExceptionalConeReport {
    pub has_exceptional: bool,
    /// Common part of the tangent cones of general polar curves (surfaces only).
    pub fixed_components: Vec<Ideal>,
    pub method: ExceptionalMethod,
    pub reducedness: Reducedness,
    /// Whitney check of the specialization family along `v`, when the tangent cone is reduced.
    pub family: Option<WhitneyVerdict>,
}

fn global_dimension(ideal: &Ideal, limits: Limits) -> Result<i64> {
    Ok(compute_basis(ideal, &MonomialOrder::DegRevLex, limits)?.dimension())
}

/// Reducedness of a homogeneous cone. A form is squarefree exactly when its
/// singular locus has codimension at least two.
pub fn cone_reducedness(cone: &Ideal, limits: Limits) -> Result<Reducedness> {
    let n = cone.ring().nvars() as i64;
    let dim = global_dimension(cone, limits)?;
    let jac = jacobian_matrix(cone);
    let c = (n - dim) as usize;
    let sing = cone.with_gens(minors(&jac, c))?;
    let sing_dim = global_dimension(&sing, limits)?;
    let reduced = sing_dim < dim;
    Ok(match (cone.gens().len() == 1, reduced) {
        (_, false) => Reducedness::NotReduced,
        (true, true) => Reducedness::Squarefree,
        (false, true) => Reducedness::GenericallyReduced,
    })
}

/// Lines shared by the tangent cones of the polar curves for every seed of
/// the policy. Empty when some polar curve is empty.
pub fn fixed_part(ideal: &Ideal, config: &Config) -> Result<Vec<Ideal>> {
    let ring = ideal.ring();
    let mut common: Option<Ideal> = None;
    for &seed in &config.policy.seeds {
        let mut draw = Draw::new(seed, 2000, config.policy.height);
        let frame = ProjectionFrame::generic(ring, 2, &mut draw, seed)?;
        let polar = polar_ideal(ideal, 1, &frame, config.limits)?;
        if local_dimension(&polar, config.limits)? < 1 {
            return Ok(Vec::new());
        }
        let cone = tangent_cone(&polar, config.limits)?.ideal;
        common = Some(match common {
            None => cone,
            Some(c) => c.sum(&cone)?,
        });
    }
    let Some(common) = common else {
        return Err(Error::Input("the genericity policy has no seeds".into()));
    };
    let gb = compute_basis(&common, &MonomialOrder::DegRevLex, config.limits)?;
    if gb.dimension() < 1 {
        return Ok(Vec::new());
    }
    Ok(vec![gb.ideal()])
}

/// Exceptional cones of `(X, 0)`.
///
/// With a reduced tangent cone the specialization family to the tangent cone
/// is checked for Whitney equisingularity along its parameter. For surfaces
/// the fixed part of the tangent cones of polar curves is computed as well;
/// this needs no reducedness, and for a non-reduced cone it is the only method.
pub fn exceptional_cone_test(ideal: &Ideal, config: &Config) -> Result<ExceptionalConeReport> {
    let limits = config.limits;
    let cone = tangent_cone(ideal, limits)?.ideal;
    let reducedness = cone_reducedness(&cone, limits)?;
    let surface = local_dimension(ideal, limits)? == 2;
    if reducedness == Reducedness::NotReduced && !surface {
        return Err(Error::precondition(format!("the tangent cone ({cone}) is not reduced")));
    }
    let family = if reducedness == Reducedness::NotReduced {
        None
    } else {
        let fam = specialization_family(ideal, limits)?;
        Some(whitney_family_check(&fam.ideal, fam.parameter, &default_samples(), config)?)
    };
    let fixed_components = if surface { fixed_part(ideal, config)? } else { Vec::new() };
    let not_whitney = family.as_ref().map(|f| f.verdict == Verdict::NotWhitney);
    if let Some(nw) = not_whitney {
        if surface && nw == fixed_components.is_empty() {
            return Err(Error::Genericity(
                "the specialization family and the fixed part of the polar curves disagree".into(),
            ));
        }
    }
    Ok(ExceptionalConeReport {
        has_exceptional: not_whitney.unwrap_or(false) || !fixed_components.is_empty(),
        method: if family.is_some() {
            ExceptionalMethod::SpecializationWhitney
        } else {
            ExceptionalMethod::FixedPart
        },
        fixed_components,
        reducedness,
        family,
    })
}
