//! Local polar varieties and their multiplicities, conormal spaces, projective
//! duals and the local Euler obstruction.

use std::sync::Arc;

use serde::Serialize;

use crate::basis::{
    compute_basis, eliminate, hilbert, hilbert_of_monomials, local_saturate_poly, modular_leading_monomials,
    modular_variable_saturation_leading_monomials, saturate, HilbertData, Limits,
};
use crate::error::{Error, Result};
use crate::generic::{certify, Draw, GenericityRecord};
use crate::germ::{local_dimension, multiplicity, multiplicity_or_zero};
use crate::linalg::{minors, rank};
use crate::poly::{Coeff, Ideal, Locus, Monomial, MonomialOrder, Polynomial, RingContext};
use crate::Config;

/// Linear forms `l_1, ..., l_c` defining the projection `C^n -> C^c` whose
/// kernel is the subspace `D_c`.
#[derive(Clone, Debug)]
pub struct ProjectionFrame {
    pub codim: usize,
    pub forms: Vec<Polynomial>,
    pub seed: Option<u64>,
}

impl ProjectionFrame {
    pub fn new(forms: Vec<Polynomial>) -> Result<ProjectionFrame> {
        let Some(first) = forms.first() else {
            return Err(Error::Input("a projection frame needs at least one linear form".into()));
        };
        let ring = first.ring().clone();
        let n = ring.nvars();
        let mut rows = Vec::new();
        for f in &forms {
            if !f.ring().same_variables(&ring) {
                return Err(Error::RingMismatch);
            }
            if f.terms().iter().any(|(m, _)| m.degree() != 1) {
                return Err(Error::Input(format!("frame form {f} is not linear")));
            }
            rows.push((0..n).map(|i| f.coefficient(&Monomial::var(n, i, 1))).collect::<Vec<_>>());
        }
        if rank(&rows) != forms.len() {
            return Err(Error::Input("frame forms are linearly dependent".into()));
        }
        Ok(ProjectionFrame {
            codim: forms.len(),
            forms,
            seed: None,
        })
    }

    /// Frame with `codim` seeded generic forms.
    pub fn generic(ring: &Arc<RingContext>, codim: usize, draw: &mut Draw, seed: u64) -> Result<ProjectionFrame> {
        let vars: Vec<usize> = (0..ring.nvars()).collect();
        let mut frame = ProjectionFrame::new(draw.linear_forms(ring, &vars, codim)?)?;
        frame.seed = Some(seed);
        Ok(frame)
    }
}

pub fn jacobian_matrix(ideal: &Ideal) -> Vec<Vec<Polynomial>> {
    let n = ideal.ring().nvars();
    ideal
        .gens()
        .iter()
        .map(|g| (0..n).map(|i| g.derivative(i)).collect())
        .collect()
}

/// Ideal of the singular locus of an equidimensional `I` of dimension `d`:
/// `I` plus the `(n-d)`-minors of its Jacobian matrix.
pub fn singular_locus(ideal: &Ideal, d: usize) -> Result<Ideal> {
    let n = ideal.ring().nvars();
    ideal.with_gens(minors(&jacobian_matrix(ideal), n - d))
}

fn germ_dimension(ideal: &Ideal, limits: Limits) -> Result<usize> {
    let d = local_dimension(ideal, limits)?;
    if d < 0 {
        return Err(Error::precondition("the germ at the origin is empty"));
    }
    Ok(d as usize)
}

/// Ideal of `P_k(X; D)`: `I` plus the `(n-k+1)`-minors of the Jacobian of
/// the generators stacked on the frame forms, saturated by the singular
/// locus.
pub fn polar_ideal(ideal: &Ideal, k: usize, frame: &ProjectionFrame, limits: Limits) -> Result<Ideal> {
    let d = germ_dimension(ideal, limits)?;
    polar_ideal_of_dim(ideal, d, k, frame, limits)
}

fn check_polar_args(ideal: &Ideal, d: usize, k: usize, frame: &ProjectionFrame) -> Result<()> {
    if k >= d.max(1) {
        return Err(Error::precondition(format!("polar index {k} out of range 0..{}", d.max(1) - 1)));
    }
    if frame.codim != d - k + 1 {
        return Err(Error::Input(format!(
            "P_{k} of a {d}-dimensional germ needs a frame of codimension {}, got {}",
            d - k + 1,
            frame.codim
        )));
    }
    if frame.forms.iter().any(|f| !f.ring().same_variables(ideal.ring())) {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// `I` plus the `(n-k+1)`-minors of the Jacobian stacked on the frame forms.
pub fn critical_ideal(ideal: &Ideal, k: usize, frame: &ProjectionFrame) -> Result<Ideal> {
    let n = ideal.ring().nvars();
    let mut matrix = jacobian_matrix(ideal);
    for f in &frame.forms {
        matrix.push((0..n).map(|i| f.derivative(i)).collect());
    }
    ideal.with_gens(minors(&matrix, n - k + 1))
}

fn polar_ideal_of_dim(ideal: &Ideal, d: usize, k: usize, frame: &ProjectionFrame, limits: Limits) -> Result<Ideal> {
    check_polar_args(ideal, d, k, frame)?;
    if k == 0 {
        return Ok(ideal.clone());
    }
    let n = ideal.ring().nvars();
    let critical = critical_ideal(ideal, k, frame)?;
    let sing = Ideal::new(ideal.ring(), minors(&jacobian_matrix(ideal), n - d))?;
    saturate(&critical, &sing, limits)
}

/// Hilbert data of the local ring at the origin, from the leading monomials
/// of a `ds` standard basis.
fn local_hilbert(ideal: &Ideal, limits: Limits) -> Result<HilbertData> {
    let lms = modular_leading_monomials(ideal, &MonomialOrder::NegDegRevLex, limits)?;
    Ok(hilbert_of_monomials(&lms, ideal.ring().nvars()))
}

/// Multiplicity at the origin of `P_k(X; D)`, computed in the local ring.
///
/// Components of the critical scheme inside the singular locus are removed
/// by a saturation, which is needed only when the singular locus is at
/// least as large as the polar variety; smaller components do not
/// contribute to the multiplicity. When the singular locus is a coordinate
/// subspace near the origin the saturation is taken with respect to a
/// generic linear form vanishing on it, otherwise with respect to a generic
/// element of the singular-locus ideal.
pub fn local_polar_multiplicity(
    ideal: &Ideal,
    d: usize,
    k: usize,
    frame: &ProjectionFrame,
    draw: &mut Draw,
    limits: Limits,
) -> Result<u64> {
    check_polar_args(ideal, d, k, frame)?;
    if k == 0 {
        return multiplicity_or_zero(ideal, limits);
    }
    let n = ideal.ring().nvars();
    let target = (d - k) as i64;
    let critical = critical_ideal(ideal, k, frame)?;
    let sing = ideal.with_gens(minors(&jacobian_matrix(ideal), n - d))?;
    let sing_dim = local_hilbert(&sing, limits)?.dimension;
    let complete_intersection = ideal.gens().len() == n - d;
    let keep = n - (d - k);
    if sing_dim < target {
        if complete_intersection {
            if let Some(m) = complete_intersection_polar(&critical, keep, draw, limits)? {
                return Ok(m);
            }
        }
        let h = local_hilbert(&critical, limits)?;
        return polar_multiplicity_of(&h, k, target);
    }
    let support = coordinate_support(&sing, limits)?;
    if let (true, Some(vars)) = (complete_intersection && sing_dim == target, &support) {
        if let Some(m) = complete_intersection_polar_off_axis(&critical, vars, keep, draw, limits)? {
            return Ok(m);
        }
    }
    let h = match support {
        Some(vars) => linear_saturation(&critical, &vars, draw, limits)?,
        None => {
            let mut g = Polynomial::zero(ideal.ring());
            for m in sing.gens() {
                g = &g + &m.scale(&draw.nonzero_coeff());
            }
            let saturated = local_saturate_poly(&critical, &g, limits)?;
            local_hilbert(&saturated, limits)?
        }
    };
    polar_multiplicity_of(&h, k, target)
}

fn polar_multiplicity_of(h: &HilbertData, k: usize, target: i64) -> Result<u64> {
    match h.dimension {
        e if e < target => Ok(0),
        e if e == target => Ok(h.multiplicity as u64),
        _ => Err(Error::precondition(format!(
            "the polar variety P_{k} has dimension above {target}; is the germ equidimensional?"
        ))),
    }
}

/// The variables `x_i, i in S` when `V(J)` is the coordinate subspace
/// `{x_i = 0, i in S}` near the origin.
fn coordinate_support(sing: &Ideal, limits: Limits) -> Result<Option<Vec<usize>>> {
    let ring = sing.ring();
    let n = ring.nvars();
    let mut support = Vec::new();
    for i in 0..n {
        let lms = modular_variable_saturation_leading_monomials(sing, i, &MonomialOrder::NegDegRevLex, limits)?;
        if lms.iter().any(|m| m.is_one()) {
            support.push(i);
        }
    }
    if support.is_empty() {
        return Ok(None);
    }
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            if support.contains(&i) {
                Polynomial::zero(ring)
            } else {
                Polynomial::var(ring, i)
            }
        })
        .collect();
    for g in sing.gens() {
        if !g.substitute(ring, &images)?.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(support))
}

/// Hilbert data at the origin of `I : l^∞` for a generic linear form `l` in
/// the variables `vars`, computed in coordinates where `l` is a variable.
fn linear_saturation(ideal: &Ideal, vars: &[usize], draw: &mut Draw, limits: Limits) -> Result<HilbertData> {
    let ring = ideal.ring();
    let pivot = vars[0];
    let coeffs: Vec<Coeff> = vars.iter().map(|_| draw.nonzero_coeff()).collect();
    // x_pivot = (y_pivot - sum_{i != pivot} c_i y_i) / c_pivot
    let mut solved = Polynomial::var(ring, pivot);
    for (&v, c) in vars.iter().zip(&coeffs).skip(1) {
        solved = &solved - &Polynomial::var(ring, v).scale(c);
    }
    let solved = solved.scale(&coeffs[0].recip());
    let images: Vec<Polynomial> = (0..ring.nvars())
        .map(|i| if i == pivot { solved.clone() } else { Polynomial::var(ring, i) })
        .collect();
    let moved = ideal.substitute(ring, &images)?;
    let lms = modular_variable_saturation_leading_monomials(&moved, pivot, &MonomialOrder::NegDegRevLex, limits)?;
    Ok(hilbert_of_monomials(&lms, ring.nvars()))
}

/// The singular locus is a coordinate subspace `L` of the dimension of the
/// polar variety, so the critical scheme of a complete intersection is the
/// polar variety plus `L` counted with its generic length. That length is
/// read off at a generic point of `L`, where the polar variety is absent,
/// and subtracted from the multiplicity of the critical scheme at the
/// origin.
fn complete_intersection_polar_off_axis(
    critical: &Ideal,
    vars: &[usize],
    keep: usize,
    draw: &mut Draw,
    limits: Limits,
) -> Result<Option<u64>> {
    let ring = critical.ring();
    let Some(total) = complete_intersection_polar(critical, keep, draw, limits)? else {
        return Ok(None);
    };
    let images: Vec<Polynomial> = (0..ring.nvars())
        .map(|i| {
            let x = Polynomial::var(ring, i);
            if vars.contains(&i) {
                x
            } else {
                &x + &Polynomial::constant(ring, draw.nonzero_coeff())
            }
        })
        .collect();
    let at_point = critical.substitute(ring, &images)?;
    let Some(generic_length) = complete_intersection_polar(&at_point, keep, draw, limits)? else {
        return Ok(None);
    };
    if generic_length > total {
        return Err(Error::precondition("inconsistent lengths along the singular locus"));
    }
    Ok(Some(total - generic_length))
}

/// For a complete intersection the critical scheme is determinantal of the
/// expected codimension whenever it has the expected dimension, hence
/// Cohen-Macaulay, and its multiplicity is the colength of a generic linear
/// section down to dimension zero. `None` when the section is not
/// zero-dimensional.
fn complete_intersection_polar(critical: &Ideal, keep: usize, draw: &mut Draw, limits: Limits) -> Result<Option<u64>> {
    let ring = critical.ring();
    let n = ring.nvars();
    let sub = ring.restricted(&(0..keep).collect::<Vec<_>>());
    let images: Vec<Polynomial> = (0..n)
        .map(|j| {
            if j < keep {
                Polynomial::var(&sub, j)
            } else {
                let mut acc = Polynomial::zero(&sub);
                for i in 0..keep {
                    acc = &acc + &Polynomial::var(&sub, i).scale(&draw.coeff());
                }
                acc
            }
        })
        .collect();
    let section = critical.substitute(&sub, &images)?;
    let h = local_hilbert(&section, limits)?;
    Ok(match h.dimension {
        -1 => Some(0),
        0 => Some(h.multiplicity as u64),
        _ => None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolarProfile {
    /// `m[k]` is the multiplicity at the origin of `P_k`, `0` when empty.
    pub m: Vec<u64>,
    pub certificates: Vec<GenericityRecord>,
}

impl PolarProfile {
    pub fn is_monotone_empty(&self) -> bool {
        self.m.windows(2).all(|w| w[0] != 0 || w[1] == 0)
    }
}

/// Multiplicity at the origin of a polar variety for a seeded generic frame.
pub fn generic_polar_multiplicity(ideal: &Ideal, d: usize, k: usize, seed: u64, height: u64, limits: Limits) -> Result<u64> {
    let mut draw = Draw::new(seed, 1000 + k as u64, height);
    let frame = ProjectionFrame::generic(ideal.ring(), d - k + 1, &mut draw, seed)?;
    local_polar_multiplicity(ideal, d, k, &frame, &mut draw, limits)
}

/// `M* = (m_0, ..., m_{d-1})` at the origin with certified generic frames.
pub fn polar_profile(ideal: &Ideal, config: &Config) -> Result<PolarProfile> {
    let d = germ_dimension(ideal, config.limits)?;
    let mut m = vec![multiplicity(ideal, config.limits)?];
    let mut certificates = vec![GenericityRecord::exact()];
    for k in 1..d {
        let (v, rec) = certify(&config.policy, |seed, height| {
            generic_polar_multiplicity(ideal, d, k, seed, height, config.limits)
        })?;
        m.push(v);
        certificates.push(rec);
    }
    Ok(PolarProfile { m, certificates })
}

/// `Eu(X, 0) = sum_k (-1)^k m_0(P_k)`.
pub fn euler_obstruction(ideal: &Ideal, config: &Config) -> Result<(i64, PolarProfile)> {
    let profile = polar_profile(ideal, config)?;
    let eu = profile
        .m
        .iter()
        .enumerate()
        .map(|(k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum();
    Ok((eu, profile))
}

/// Ring `(z; xi)` with one dual variable per primal one.
pub fn conormal_ring(ring: &Arc<RingContext>) -> Arc<RingContext> {
    let names: Vec<String> = ring.var_names().iter().map(|v| format!("xi_{v}")).collect();
    ring.with_locus(Locus::Affine).extended(&names)
}

/// Conormal space in `C^n x C^n`: `I` plus the `(n-d+1)`-minors of the
/// Jacobian with the row `xi`, saturated by the singular locus. Returned in
/// `conormal_ring(I.ring())`.
pub fn conormal_ideal(ideal: &Ideal, limits: Limits) -> Result<Ideal> {
    let src = ideal.ring();
    let affine = src.with_locus(Locus::Affine);
    let base = ideal.with_ring(&affine);
    let d = compute_basis(&base, &MonomialOrder::DegRevLex, limits)?.dimension();
    if d < 0 {
        return Err(Error::precondition("the variety is empty"));
    }
    let d = d as usize;
    let n = src.nvars();
    let ring = conormal_ring(src);
    let lifted = base.map_to(&ring)?;
    let mut matrix: Vec<Vec<Polynomial>> = jacobian_matrix(&base)
        .into_iter()
        .map(|row| row.iter().map(|p| p.map_to(&ring)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    matrix.push((0..n).map(|i| Polynomial::var(&ring, n + i)).collect());
    let incidence = lifted.with_gens(minors(&matrix, n - d + 1))?;
    let sing: Vec<Polynomial> = minors(&jacobian_matrix(&base), n - d)
        .iter()
        .map(|p| p.map_to(&ring))
        .collect::<Result<_>>()?;
    saturate(&incidence, &Ideal::new(&ring, sing)?, limits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualMethod {
    Elimination,
    PolarMultiplicity,
    PluckerFormula,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualReport {
    /// Ideal of the dual in the dual coordinates, when computed by elimination.
    pub dual_ideal: Option<Ideal>,
    pub dual_degree: u64,
    pub dual_defect: u64,
    pub method: DualMethod,
    pub certificates: Vec<GenericityRecord>,
}

fn require_projective(ideal: &Ideal) -> Result<()> {
    if ideal.ring().locus() != Locus::Projective || !ideal.is_homogeneous() {
        return Err(Error::precondition("a homogeneous ideal in a projective context is required"));
    }
    Ok(())
}

/// Dual variety by eliminating the primal variables from the conormal space
/// of the affine cone.
pub fn dual_variety(ideal: &Ideal, limits: Limits) -> Result<DualReport> {
    require_projective(ideal)?;
    let n = ideal.ring().nvars();
    let conormal = conormal_ideal(ideal, limits)?;
    let ring = conormal.ring().clone();
    let image = eliminate(&conormal, &(0..n).collect::<Vec<_>>(), limits)?;
    let dual_ring = ring.restricted(&(n..2 * n).collect::<Vec<_>>()).with_locus(Locus::Projective);
    let dual = Ideal::new(&dual_ring, image.gens().iter().map(|g| g.map_to(&dual_ring)).collect::<Result<_>>()?)?;
    let reduced = compute_basis(&dual, &MonomialOrder::DegRevLex, limits)?.ideal();
    let h = hilbert(&reduced, limits)?;
    if h.dimension < 1 {
        return Err(Error::precondition("the dual variety is empty"));
    }
    // affine cone of dimension dim(dual) + 1 in C^n
    let codim = n as i64 - h.dimension;
    Ok(DualReport {
        dual_ideal: Some(reduced),
        dual_degree: h.multiplicity as u64,
        dual_defect: (codim - 1) as u64,
        method: DualMethod::Elimination,
        certificates: Vec::new(),
    })
}

/// Restriction to the generic hyperplane `z_last = sum a_i z_i`.
fn generic_hyperplane_section(ideal: &Ideal, draw: &mut Draw) -> Result<Ideal> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let sub = ring.restricted(&(0..n - 1).collect::<Vec<_>>());
    let mut images: Vec<Polynomial> = (0..n - 1).map(|i| Polynomial::var(&sub, i)).collect();
    let mut last = Polynomial::zero(&sub);
    for i in 0..n - 1 {
        last = &last + &Polynomial::var(&sub, i).scale(&draw.coeff());
    }
    images.push(last);
    ideal.substitute(&sub, &images)
}

/// Degree of the dual as the multiplicity at the vertex of the polar curve
/// of the cone over `V ∩ H_1 ∩ ... ∩ H_j`, for the first `j` at which it is
/// nonempty; `j` is the dual defect.
pub fn dual_degree_via_polar(ideal: &Ideal, config: &Config) -> Result<DualReport> {
    require_projective(ideal)?;
    let cone = ideal.with_ring(&ideal.ring().with_locus(Locus::Local));
    let dim_cone = germ_dimension(&cone, config.limits)?;
    if dim_cone == 0 {
        return Err(Error::precondition("the projective variety is empty"));
    }
    let d = dim_cone - 1;
    let mut certificates = Vec::new();
    for j in 0..=d {
        let (m, rec) = certify(&config.policy, |seed, height| {
            let mut draw = Draw::new(seed, 2000 + j as u64, height);
            let mut section = cone.clone();
            for _ in 0..j {
                section = generic_hyperplane_section(&section, &mut draw)?;
            }
            let dim = dim_cone - j;
            if dim == 1 {
                return multiplicity_or_zero(&section, config.limits);
            }
            generic_polar_multiplicity(&section, dim, dim - 1, seed, height, config.limits)
        })?;
        certificates.push(rec);
        if m > 0 {
            return Ok(DualReport {
                dual_ideal: None,
                dual_degree: m,
                dual_defect: j as u64,
                method: DualMethod::PolarMultiplicity,
                certificates,
            });
        }
    }
    Err(Error::precondition("no nonempty polar variety found"))
}
