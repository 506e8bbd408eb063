use germlab::polar::dual_variety;
use germlab::poly::{ideal_in, Ideal, Locus, Polynomial};
use germlab::topology::{
    chi_projective_hypersurface_isolated, chi_smooth_hypersurface, evaluate_general_plucker, evaluate_lt_formula,
    isolated_lt_star, isolated_singularities, isolated_strata, plucker_isolated, polar_milnor_identity_check,
    vanishing_chi_isolated, StratumInvariants,
};
use germlab::{Config, ErrorKind};

fn projective(vars: &[&str], f: &str) -> Ideal {
    ideal_in(vars, Locus::Projective, &[f]).unwrap()
}

fn local_poly(vars: &[&str], f: &str) -> Polynomial {
    ideal_in(vars, Locus::Local, &[f]).unwrap().gens()[0].clone()
}

const XYZ: [&str; 3] = ["x", "y", "z"];
const CRITERION_GERMS: [(&[&str], &str); 4] = [
    (&["x", "y"], "y^2 - x^3"),
    (&["x", "y"], "x^2 + y^3"),
    (&XYZ, "x^2 + y^2 + z^2"),
    (&XYZ, "x^3 + y^3 + z^3"),
];

#[test]
fn smooth_hypersurfaces_match_the_closed_form() {
    // chi of a smooth degree m hypersurface in P^n is ((1-m)^(n+1) - 1)/m + n + 1
    for m in 1..7i64 {
        for n in 1..6i64 {
            let closed = ((1 - m).pow(n as u32 + 1) - 1) / m + n + 1;
            assert_eq!(chi_smooth_hypersurface(m as u64, n - 1).unwrap(), closed, "m={m} n={n}");
        }
    }
    assert_eq!(chi_smooth_hypersurface(3, 1).unwrap(), 0);
    assert_eq!(chi_smooth_hypersurface(1, 1).unwrap(), 2);
    assert_eq!(chi_smooth_hypersurface(7, 0).unwrap(), 7);
    assert_eq!(chi_smooth_hypersurface(0, 1).unwrap_err().kind(), ErrorKind::Input);
}

#[test]
fn plucker_values_agree_with_elimination() {
    let cfg = Config::default();
    let cases = [
        (&XYZ[..], "x*z - y^2", 2),
        (&XYZ[..], "x^3 + y^3 + z^3", 6),
        (&XYZ[..], "z*y^2 - x^2*(x + z)", 4),
        (&XYZ[..], "z*y^2 - x^3", 3),
    ];
    for (vars, f, expected) in cases {
        let v = projective(vars, f);
        let rep = plucker_isolated(&v.gens()[0], &cfg).unwrap();
        assert_eq!(rep.value, expected, "{f}");
        assert_eq!(dual_variety(&v, cfg.limits).unwrap().dual_degree as i64, expected, "{f}");
    }
    let cubic = projective(&["x", "y", "z", "w"], "x^3 + y^3 + z^3 + w^3");
    let rep = plucker_isolated(&cubic.gens()[0], &cfg).unwrap();
    assert_eq!(rep.value, 12);
    assert_eq!(rep.smooth_value, 3 * 2 * 2);
    assert!(rep.singularities.points.is_empty());
}

#[test]
fn singular_points_of_plane_cubics() {
    let cfg = Config::default();
    let nodal = projective(&XYZ, "z*y^2 - x^2*(x + z)");
    let sing = isolated_singularities(&nodal.gens()[0], &cfg).unwrap();
    assert_eq!(sing.points.len(), 1);
    assert_eq!(sing.points[0].coordinates, vec!["0", "0", "1"]);
    assert_eq!(sing.points[0].milnor_sequence, vec![1, 1, 1]);
    let cusp = projective(&XYZ, "z*y^2 - x^3");
    let sing = isolated_singularities(&cusp.gens()[0], &cfg).unwrap();
    assert_eq!(sing.points[0].milnor_sequence, vec![1, 1, 2]);
    // a triangle of lines has three nodes
    let triangle = projective(&XYZ, "x*y*z");
    assert_eq!(isolated_singularities(&triangle.gens()[0], &cfg).unwrap().points.len(), 3);
}

#[test]
fn irrational_singular_points_are_reported() {
    let lines = projective(&XYZ, "z*(x^2 - 2*y^2)");
    let err = isolated_singularities(&lines.gens()[0], &Config::default()).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Precondition);
    let affine = ideal_in(&XYZ, Locus::Local, &["x^3 + y^3 + z^3"]).unwrap();
    let err = plucker_isolated(&affine.gens()[0], &Config::default()).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Precondition);
}

#[test]
fn euler_characteristics_of_singular_curves() {
    let cfg = Config::default();
    // nodal cubic: a sphere with two points glued; cuspidal cubic: a sphere
    let nodal = projective(&XYZ, "z*y^2 - x^2*(x + z)");
    assert_eq!(chi_projective_hypersurface_isolated(&nodal.gens()[0], &cfg).unwrap().value, 1);
    let cusp = projective(&XYZ, "z*y^2 - x^3");
    assert_eq!(chi_projective_hypersurface_isolated(&cusp.gens()[0], &cfg).unwrap().value, 2);
    // three lines: three spheres glued at three points
    let triangle = projective(&XYZ, "x*y*z");
    assert_eq!(chi_projective_hypersurface_isolated(&triangle.gens()[0], &cfg).unwrap().value, 3);
}

#[test]
fn general_plucker_matches_the_isolated_case() {
    let cfg = Config::default();
    for f in ["z*y^2 - x^2*(x + z)", "z*y^2 - x^3", "x*z - y^2", "x*y*z"] {
        let v = projective(&XYZ, f);
        let (strata, d) = isolated_strata(&v.gens()[0], &cfg).unwrap();
        let general = evaluate_general_plucker(&strata, d).unwrap();
        assert_eq!(general, plucker_isolated(&v.gens()[0], &cfg).unwrap().value, "{f}");
    }
}

#[test]
fn general_plucker_reads_the_json_schema() {
    let text = r#"[
        {"dim": 1, "chi_list": [1, 3, 0]},
        {"dim": 0, "vanishing_chi": [2], "polar_degree": 1}
    ]"#;
    let strata: Vec<StratumInvariants> = serde_json::from_str(text).unwrap();
    assert_eq!(evaluate_general_plucker(&strata, 1).unwrap(), 4);
    assert_eq!(evaluate_general_plucker(&strata[1..], 1).unwrap_err().kind(), ErrorKind::Input);
}

#[test]
fn polar_milnor_identity() {
    let cfg = Config::default();
    for (vars, f) in CRITERION_GERMS {
        let rep = polar_milnor_identity_check(&local_poly(vars, f), &cfg).unwrap();
        assert!(rep.holds(), "{f}: {:?}", rep.rows);
        assert_eq!(rep.rows.len(), vars.len() - 1);
    }
}

#[test]
fn lt_formula_vanishes_on_isolated_singularities() {
    let cfg = Config::default();
    for (vars, f) in CRITERION_GERMS {
        let star = isolated_lt_star(&local_poly(vars, f), &cfg).unwrap();
        assert_eq!(evaluate_lt_formula(&star).unwrap(), 0, "{f}: {star:?}");
    }
}

#[test]
fn vanishing_euler_characteristics() {
    let cfg = Config::default();
    // complex links: an annulus for the A1 surface, a point pair for a node
    assert_eq!(vanishing_chi_isolated(&local_poly(&XYZ, "x^2 + y^2 + z^2"), 1, &cfg).unwrap(), 0);
    assert_eq!(vanishing_chi_isolated(&local_poly(&["x", "y"], "x*y"), 1, &cfg).unwrap(), 2);
    assert_eq!(vanishing_chi_isolated(&local_poly(&["x", "y"], "y^2 - x^3"), 1, &cfg).unwrap(), 2);
    let err = vanishing_chi_isolated(&local_poly(&["x", "y"], "x*y"), 2, &cfg).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Input);
}
