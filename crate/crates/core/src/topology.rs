//! Euler characteristics and Plücker-type formulas: vanishing Euler
//! characteristics of isolated hypersurface singularities, smooth projective
//! hypersurfaces, degrees of duals with isolated singularities, the general
//! stratified formula and the local formula relating vanishing Euler
//! characteristics to polar multiplicities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::basis::{compute_basis, Limits};
use crate::error::{Error, Result};
use crate::generic::GenericityRecord;
use crate::germ::{local_basis, milnor_sequence};
use crate::polar::polar_profile;
use crate::poly::{Coeff, Ideal, Locus, MonomialOrder, Polynomial};
use crate::Config;

fn overflow() -> Error {
    Error::Input("integer overflow in formula evaluation".into())
}

fn isolated_sequence(f: &Polynomial, config: &Config) -> Result<(Vec<i64>, Vec<GenericityRecord>)> {
    let seq = milnor_sequence(f, config)?;
    let mu = seq.mu.iter().map(|m| m.finite().expect("isolated") as i64).collect();
    Ok((mu, seq.records))
}

/// `chi_i(X, {0}) = 1 + (-1)^(d-i) mu^(d+1-i)` for a hypersurface
/// `f = 0` in `C^(d+1)` with an isolated singularity at the origin,
/// `1 <= i <= d`.
pub fn vanishing_chi_isolated(f: &Polynomial, i: usize, config: &Config) -> Result<i64> {
    let d = f.ring().nvars() - 1;
    if i == 0 || i > d {
        return Err(Error::Input(format!("index {i} outside 1..={d}")));
    }
    let (mu, _) = isolated_sequence(f, config)?;
    Ok(vanishing_chi_from_sequence(&mu, d, i))
}

fn vanishing_chi_from_sequence(mu: &[i64], d: usize, i: usize) -> i64 {
    if i > d {
        return 0;
    }
    let sign = if (d - i).is_multiple_of(2) { 1 } else { -1 };
    1 + sign * mu[d + 1 - i]
}

#[derive(Clone, Debug, Serialize)]
pub struct PolarMilnorRow {
    pub k: usize,
    pub polar_multiplicity: u64,
    pub milnor_sum: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolarMilnorReport {
    pub rows: Vec<PolarMilnorRow>,
    pub milnor_sequence: Vec<u64>,
    pub polar_profile: Vec<u64>,
    pub certificates: Vec<GenericityRecord>,
}

impl PolarMilnorReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// Compares `m_0(P_k)` from the polar profile with `mu^(k+1) + mu^(k)` from
/// the Milnor sequence, for `0 <= k < d`.
pub fn polar_milnor_identity_check(f: &Polynomial, config: &Config) -> Result<PolarMilnorReport> {
    let seq = milnor_sequence(f, config)?;
    let mu = seq.values();
    let ideal = Ideal::new(f.ring(), vec![f.clone()])?;
    let profile = polar_profile(&ideal, config)?;
    let rows = profile
        .m
        .iter()
        .enumerate()
        .map(|(k, &m)| {
            let sum = mu[k + 1] + mu[k];
            PolarMilnorRow {
                k,
                polar_multiplicity: m,
                milnor_sum: sum,
                holds: m == sum,
            }
        })
        .collect();
    let mut certificates = seq.records;
    certificates.extend(profile.certificates);
    Ok(PolarMilnorReport {
        rows,
        milnor_sequence: mu,
        polar_profile: profile.m,
        certificates,
    })
}

/// Euler characteristic of a smooth hypersurface of degree `m` and dimension
/// `dim`, from `chi_d - 2 chi_(d-1) + chi_(d-2) = (-1)^d m (m-1)^d` with
/// `chi_0 = m` and `chi_(-1) = 0`.
pub fn chi_smooth_hypersurface(m: u64, dim: i64) -> Result<i64> {
    if m == 0 {
        return Err(Error::Input("degree must be positive".into()));
    }
    if dim < 0 {
        return Ok(0);
    }
    let m = i64::try_from(m).map_err(|_| overflow())?;
    let (mut prev2, mut prev1) = (0i64, m);
    for d in 1..=dim {
        let power = (m - 1).checked_pow(d as u32).ok_or_else(overflow)?;
        let mut rhs = m.checked_mul(power).ok_or_else(overflow)?;
        if d % 2 == 1 {
            rhs = -rhs;
        }
        let next = rhs
            .checked_add(prev1.checked_mul(2).ok_or_else(overflow)?)
            .and_then(|v| v.checked_sub(prev2))
            .ok_or_else(overflow)?;
        prev2 = prev1;
        prev1 = next;
    }
    Ok(prev1)
}

/// A singular point of a projective hypersurface with its local invariants.
#[derive(Clone, Debug, Serialize)]
pub struct SingularPoint {
    /// Homogeneous coordinates, normalized with first nonzero entry `1`.
    pub coordinates: Vec<String>,
    /// `(mu^(0), ..., mu^(n-1))` of the affine germ at the point.
    pub milnor_sequence: Vec<u64>,
    pub certificates: Vec<GenericityRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsolatedHypersurface {
    pub degree: u64,
    pub nvars: usize,
    pub points: Vec<SingularPoint>,
}

fn require_hypersurface(f: &Polynomial) -> Result<u64> {
    if f.ring().locus() != Locus::Projective || !f.is_homogeneous() || f.is_zero() {
        return Err(Error::precondition("a nonzero homogeneous polynomial in a projective context is required"));
    }
    let m = f.degree().expect("nonzero") as u64;
    if m == 0 {
        return Err(Error::precondition("a constant does not define a hypersurface"));
    }
    Ok(m)
}

/// Singular points of `V(F)` with their Milnor sequences. Each point is
/// found in the chart `z_j = 1` with `z_l = 0` for `l < j`; the points must
/// be rational, which is checked by comparing the sum of local colengths
/// with the colength of the chart ideal.
pub fn isolated_singularities(f: &Polynomial, config: &Config) -> Result<IsolatedHypersurface> {
    let m = require_hypersurface(f)?;
    let ring = f.ring();
    let n = ring.nvars();
    let mut points = Vec::new();
    for j in 0..n {
        let free: Vec<usize> = (j + 1..n).collect();
        let sub = ring.restricted(&free).with_locus(Locus::Affine);
        let images: Vec<Polynomial> = (0..n)
            .map(|l| match l.cmp(&j) {
                std::cmp::Ordering::Less => Polynomial::zero(&sub),
                std::cmp::Ordering::Equal => Polynomial::one(&sub),
                std::cmp::Ordering::Greater => Polynomial::var(&sub, l - j - 1),
            })
            .collect();
        let mut gens = vec![f.substitute(&sub, &images)?];
        for i in 0..n {
            gens.push(f.derivative(i).substitute(&sub, &images)?);
        }
        let chart = Ideal::new(&sub, gens)?;
        let gb = compute_basis(&chart, &MonomialOrder::DegRevLex, config.limits)?;
        if gb.is_unit() {
            continue;
        }
        if gb.dimension() > 0 {
            return Err(Error::precondition("the singular locus is not zero-dimensional"));
        }
        let total = gb.colength()?;
        let found = rational_points(&chart, config.limits)?;
        let mut local_sum = 0;
        for p in &found {
            let shifted = translate(&chart, p)?;
            local_sum += local_basis(&shifted, config.limits)?.colength()?;
        }
        if local_sum != total {
            return Err(Error::precondition(
                "the hypersurface has singular points with irrational coordinates",
            ));
        }
        for p in found {
            let mut point = vec![Coeff::zero(); n];
            point[j] = Coeff::one();
            for (k, v) in p.iter().enumerate() {
                point[j + 1 + k] = v.clone();
            }
            points.push(local_invariants(f, j, &point, config)?);
        }
    }
    Ok(IsolatedHypersurface {
        degree: m,
        nvars: n,
        points,
    })
}

/// Milnor sequence of the germ of `V(F)` at `point`, in the affine chart
/// `z_j = 1` centered at the point.
fn local_invariants(f: &Polynomial, j: usize, point: &[Coeff], config: &Config) -> Result<SingularPoint> {
    let ring = f.ring();
    let n = ring.nvars();
    let keep: Vec<usize> = (0..n).filter(|&l| l != j).collect();
    let chart = ring.restricted(&keep).with_locus(Locus::Local);
    let images: Vec<Polynomial> = (0..n)
        .map(|l| {
            if l == j {
                Polynomial::one(&chart)
            } else {
                let idx = keep.iter().position(|&x| x == l).expect("kept");
                &Polynomial::var(&chart, idx) + &Polynomial::constant(&chart, point[l].clone())
            }
        })
        .collect();
    let g = f.substitute(&chart, &images)?;
    let seq = milnor_sequence(&g, config)?;
    Ok(SingularPoint {
        coordinates: point.iter().map(|c| c.to_string()).collect(),
        milnor_sequence: seq.values(),
        certificates: seq.records,
    })
}

fn translate(ideal: &Ideal, p: &[Coeff]) -> Result<Ideal> {
    let ring = ideal.ring();
    let images: Vec<Polynomial> = (0..ring.nvars())
        .map(|i| &Polynomial::var(ring, i) + &Polynomial::constant(ring, p[i].clone()))
        .collect();
    ideal.substitute(ring, &images)
}

/// Rational points of a zero-dimensional ideal, by back substitution along a
/// lexicographic Gröbner basis.
pub fn rational_points(ideal: &Ideal, limits: Limits) -> Result<Vec<Vec<Coeff>>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let gb = compute_basis(ideal, &MonomialOrder::Lex, limits)?;
    if gb.is_unit() {
        return Ok(Vec::new());
    }
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let last = n - 1;
    let univariate = gb
        .basis()
        .iter()
        .find(|g| g.support_vars().iter().all(|&v| v == last))
        .ok_or_else(|| Error::precondition("the ideal is not zero-dimensional"))?;
    let sub = ring.restricted(&(0..last).collect::<Vec<_>>());
    let mut out = Vec::new();
    for r in rational_roots(univariate, last)? {
        let images: Vec<Polynomial> = (0..n)
            .map(|i| {
                if i == last {
                    Polynomial::constant(&sub, r.clone())
                } else {
                    Polynomial::var(&sub, i)
                }
            })
            .collect();
        let reduced = ideal.substitute(&sub, &images)?;
        for mut p in rational_points(&reduced, limits)? {
            p.push(r.clone());
            out.push(p);
        }
    }
    Ok(out)
}

fn divisors(v: &BigInt) -> Result<Vec<BigInt>> {
    let v = v.abs();
    let limit = v.sqrt();
    if limit > BigInt::from(10_000_000u64) {
        return Err(Error::Input("coefficient too large for rational root search".into()));
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while d <= limit {
        if (&v % &d).is_zero() {
            out.push(d.clone());
            let q = &v / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    Ok(out)
}

/// Rational roots of a polynomial in the single variable `var`.
fn rational_roots(p: &Polynomial, var: usize) -> Result<Vec<Coeff>> {
    let deg = p.degree_in_var(var) as usize;
    let mut coeffs = vec![Coeff::zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m.exponents()[var] as usize] = c.clone();
    }
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Coeff::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero");
    if low > 0 {
        roots.push(Coeff::zero());
    }
    let trimmed = &ints[low..];
    if trimmed.len() == 1 {
        return Ok(roots);
    }
    let eval = |x: &Coeff| {
        trimmed
            .iter()
            .rev()
            .fold(Coeff::zero(), |acc, c| acc * x + Coeff::from_integer(c.clone()))
    };
    for num in divisors(&trimmed[0])? {
        for den in divisors(trimmed.last().expect("nonempty"))? {
            for sign in [1, -1] {
                let x = Coeff::new(num.clone() * sign, den.clone());
                if eval(&x).is_zero() && !roots.contains(&x) {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

#[derive(Clone, Debug, Serialize)]
pub struct PluckerReport {
    pub degree: u64,
    /// `m (m-1)^(n-2)`.
    pub smooth_value: i64,
    pub correction: i64,
    pub value: i64,
    pub singularities: IsolatedHypersurface,
}

/// `deg V* = m (m-1)^(n-2) - sum_i (mu^(n-1)(x_i) + mu^(n-2)(x_i))`.
pub fn plucker_isolated(f: &Polynomial, config: &Config) -> Result<PluckerReport> {
    let sing = isolated_singularities(f, config)?;
    let n = sing.nvars;
    if n < 2 {
        return Err(Error::precondition("at least two homogeneous variables are required"));
    }
    let m = sing.degree as i64;
    let smooth = (m - 1)
        .checked_pow((n - 2) as u32)
        .and_then(|p| p.checked_mul(m))
        .ok_or_else(overflow)?;
    let correction: i64 = sing
        .points
        .iter()
        .map(|p| (p.milnor_sequence[n - 1] + p.milnor_sequence[n - 2]) as i64)
        .sum();
    Ok(PluckerReport {
        degree: sing.degree,
        smooth_value: smooth,
        correction,
        value: smooth - correction,
        singularities: sing,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiReport {
    pub smooth_value: i64,
    pub value: i64,
    pub singularities: IsolatedHypersurface,
}

/// `chi(V) = chi(V') - sum_i (-1)^(n-2) mu^(n-1)(x_i)` with `V'` smooth of
/// the same degree.
pub fn chi_projective_hypersurface_isolated(f: &Polynomial, config: &Config) -> Result<ChiReport> {
    let sing = isolated_singularities(f, config)?;
    let n = sing.nvars;
    let smooth = chi_smooth_hypersurface(sing.degree, n as i64 - 2)?;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let total: i64 = sing.points.iter().map(|p| p.milnor_sequence[n - 1] as i64).sum();
    Ok(ChiReport {
        smooth_value: smooth,
        value: smooth - sign * total,
        singularities: sing,
    })
}

/// Invariants of one stratum `V_alpha` of a Whitney stratified projective
/// variety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumInvariants {
    /// `d_alpha`.
    pub dim: i64,
    /// `(chi(V), chi(V ∩ H_1), chi(V ∩ H_2))`; required for the top stratum.
    #[serde(default)]
    pub chi_list: Vec<i64>,
    /// `vanishing_chi[j] = chi_(j+1)(V, V_alpha)`; entry `d_alpha` is used.
    #[serde(default)]
    pub vanishing_chi: Vec<i64>,
    /// `deg_(n-2)` of the dual of the closure; `1` for points.
    #[serde(default)]
    pub polar_degree: i64,
}

/// Degree of the dual from the generalized Plücker formula
/// `(-1)^d deg V* = chi(V) - 2 chi(V ∩ H_1) + chi(V ∩ H_2)
///   - sum_(d_alpha < d) (-1)^(d_alpha) deg_(n-2) P(V_alpha) (1 - chi_(d_alpha+1)(V, V_alpha))`.
pub fn evaluate_general_plucker(strata: &[StratumInvariants], d: i64) -> Result<i64> {
    let top: Vec<&StratumInvariants> = strata.iter().filter(|s| s.dim == d).collect();
    let [top] = top.as_slice() else {
        return Err(Error::Input(format!("exactly one stratum of dimension {d} is required")));
    };
    if top.chi_list.len() < 3 {
        return Err(Error::Input("the top stratum needs chi_list = [chi(V), chi(V∩H1), chi(V∩H2)]".into()));
    }
    let mut rhs = top.chi_list[0] - 2 * top.chi_list[1] + top.chi_list[2];
    for s in strata.iter().filter(|s| s.dim < d) {
        if s.dim < 0 {
            return Err(Error::Input("stratum dimensions must be nonnegative".into()));
        }
        let chi = *s.vanishing_chi.get(s.dim as usize).ok_or_else(|| {
            Error::Input(format!("stratum of dimension {} lacks chi_{}", s.dim, s.dim + 1))
        })?;
        let sign = if s.dim % 2 == 0 { 1 } else { -1 };
        rhs -= sign * s.polar_degree * (1 - chi);
    }
    Ok(if d % 2 == 0 { rhs } else { -rhs })
}

/// Strata of a projective hypersurface with isolated singularities: the
/// smooth part and one point stratum per singular point, with `chi` values
/// from the smoothing formulas.
pub fn isolated_strata(f: &Polynomial, config: &Config) -> Result<(Vec<StratumInvariants>, i64)> {
    let chi = chi_projective_hypersurface_isolated(f, config)?;
    let n = chi.singularities.nvars as i64;
    let d = n - 2;
    let m = chi.singularities.degree;
    let mut strata = vec![StratumInvariants {
        dim: d,
        chi_list: vec![chi.value, chi_smooth_hypersurface(m, d - 1)?, chi_smooth_hypersurface(m, d - 2)?],
        vanishing_chi: Vec::new(),
        polar_degree: 0,
    }];
    for p in &chi.singularities.points {
        let mu: Vec<i64> = p.milnor_sequence.iter().map(|&v| v as i64).collect();
        strata.push(StratumInvariants {
            dim: 0,
            chi_list: Vec::new(),
            vanishing_chi: (1..=d as usize).map(|i| vanishing_chi_from_sequence(&mu, d as usize, i)).collect(),
            polar_degree: 1,
        });
    }
    Ok((strata, d))
}

/// A stratum `X_beta` incident to the stratum of the point under study.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidentStratum {
    /// `d_beta`.
    pub dim: i64,
    /// `m_x(P_(d_beta - d_alpha - 1)(closure of X_beta))`, `0` if the polar
    /// does not pass through `x`.
    pub polar_multiplicity: i64,
    /// `chi_(d_beta + 1)(X, X_beta)`.
    pub chi: i64,
}

/// Data around a point `x` of a stratum `X_alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LtStar {
    /// `d_alpha`.
    pub dim: i64,
    /// `chi_(d_alpha + 1)(X, X_alpha)`.
    pub chi_first: i64,
    /// `chi_(d_alpha + 2)(X, X_alpha)`.
    pub chi_second: i64,
    pub incident: Vec<IncidentStratum>,
}

/// Left side minus right side of
/// `chi_(d_a+1) - chi_(d_a+2) = sum_b (-1)^(d_b-d_a-1) m_x(P_(d_b-d_a-1)(X_b)) (1 - chi_(d_b+1)(X, X_b))`.
pub fn evaluate_lt_formula(star: &LtStar) -> Result<i64> {
    let lhs = star.chi_first - star.chi_second;
    let mut rhs = 0;
    for b in &star.incident {
        if b.dim <= star.dim {
            return Err(Error::Input("incident strata must have larger dimension".into()));
        }
        let e = b.dim - star.dim - 1;
        let sign = if e % 2 == 0 { 1 } else { -1 };
        rhs += sign * b.polar_multiplicity * (1 - b.chi);
    }
    Ok(lhs - rhs)
}

/// The star of the singular point of an isolated hypersurface singularity:
/// `chi` values from the Milnor sequence and `m(P_(d-1))` from the polar
/// profile; the open stratum has `chi_(d+1) = 0`.
pub fn isolated_lt_star(f: &Polynomial, config: &Config) -> Result<LtStar> {
    let d = f.ring().nvars() - 1;
    let (mu, _) = isolated_sequence(f, config)?;
    let ideal = Ideal::new(f.ring(), vec![f.clone()])?;
    let profile = polar_profile(&ideal, config)?;
    let top = *profile.m.get(d - 1).ok_or_else(|| Error::precondition("empty polar profile"))?;
    Ok(LtStar {
        dim: 0,
        chi_first: vanishing_chi_from_sequence(&mu, d, 1),
        chi_second: vanishing_chi_from_sequence(&mu, d, 2),
        incident: vec![IncidentStratum {
            dim: d as i64,
            polar_multiplicity: top as i64,
            chi: 0,
        }],
    })
}
