use germlab::basis::{compute_basis, Limits};
use germlab::generic::GenericPolicy;
use germlab::germ::milnor_sequence;
use germlab::poly::{ideal_in, Coeff, Ideal, Locus, MonomialOrder};
use germlab::whitney::{
    default_samples, equimultiple_along_axis, exceptional_cone_test, fiber_at, whitney_family_check, ExceptionalMethod,
    Reducedness, Verdict,
};
use germlab::{Config, ErrorKind};

fn local(vars: &[&str], gens: &[&str]) -> Ideal {
    ideal_in(vars, Locus::Local, gens).unwrap()
}

fn q(n: i64, d: i64) -> Coeff {
    Coeff::new(n.into(), d.into())
}

const SURFACE_IN_C4: [&str; 2] = ["u2^2 - u1^3 - v*u3", "u3^2 - u1^5*u2 - 1/16*v^2*u1^7"];

#[test]
fn family_surface_is_not_whitney() {
    let i = local(&["t", "x", "y"], &["y^2 - x^3 - t^2*x^2"]);
    let v = whitney_family_check(&i, 0, &default_samples(), &Config::default()).unwrap();
    assert_eq!(v.verdict, Verdict::NotWhitney);
    assert_eq!(v.profile_at_0.m, vec![2, 1]);
    assert!(v.sample_profiles.iter().all(|p| p.m == vec![2, 0]));
    assert_eq!(v.equimultiple_per_k, vec![true, false]);
    assert!(v.multiplicity_equimultiple);
    assert!(equimultiple_along_axis(&i, 0, &default_samples(), Limits::default()).unwrap());
}

#[test]
fn briancon_speder_is_not_whitney() {
    let vars = ["t", "x", "y", "z"];
    let i = local(&vars, &["z^5 + t*y^6*z + x*y^7 + x^15"]);
    let cfg = Config::default();
    let v = whitney_family_check(&i, 0, &[q(1, 1), q(2, 1)], &cfg).unwrap();
    assert_eq!(v.verdict, Verdict::NotWhitney);
    assert!(v.multiplicity_equimultiple);
    assert!(!v.equimultiple_per_k[1]);

    // the fiber Milnor sequences jump, computed without polar varieties
    let f0 = fiber_at(&i, 0, &q(0, 1)).unwrap();
    let f1 = fiber_at(&i, 0, &q(1, 1)).unwrap();
    let s0 = milnor_sequence(&f0.gens()[0], &cfg).unwrap().values();
    let s1 = milnor_sequence(&f1.gens()[0], &cfg).unwrap().values();
    assert_eq!(s0[3], s1[3]);
    assert_ne!(s0[2], s1[2]);
    assert!(!v.fiber_profiles_constant);
    assert_eq!(v.fiber_profiles[0].m[1], s0[2] + s0[1]);
    assert_eq!(v.fiber_profiles[1].m[1], s1[2] + s1[1]);
}

#[test]
fn product_families_are_whitney() {
    for (vars, f) in [
        (vec!["t", "x", "y"], "y^2 - x^3"),
        (vec!["t", "x", "y", "z"], "x^2 + y^2 + z^2"),
        (vec!["t", "x", "y", "z"], "x^3 + y^3 + z^3"),
    ] {
        let i = local(&vars, &[f]);
        let v = whitney_family_check(&i, 0, &default_samples(), &Config::default()).unwrap();
        assert_eq!(v.verdict, Verdict::Whitney, "{f}");
        assert_eq!(v.profile_at_0, v.profile_generic, "{f}");
        assert!(v.fiber_profiles_constant, "{f}");
    }
}

#[test]
fn surface_in_c4_is_whitney_along_v() {
    let i = local(&["v", "u1", "u2", "u3"], &SURFACE_IN_C4);
    let v = whitney_family_check(&i, 0, &default_samples(), &Config::default()).unwrap();
    assert_eq!(v.verdict, Verdict::Whitney);
    assert_eq!(v.profile_at_0.m, vec![4, 0]);
    assert!(equimultiple_along_axis(&i, 0, &default_samples(), Limits::default()).unwrap());
}

#[test]
fn equimultiplicity() {
    let i = local(&["t", "x", "y"], &["x^2 - t*y^2"]);
    assert!(equimultiple_along_axis(&i, 0, &default_samples(), Limits::default()).unwrap());
    let i = local(&["t", "x", "y"], &["x^2 - t*y"]);
    assert!(!equimultiple_along_axis(&i, 0, &default_samples(), Limits::default()).unwrap());
}

#[test]
fn preconditions() {
    let cfg = Config::default();
    let off_axis = local(&["t", "x"], &["x - t"]);
    let err = whitney_family_check(&off_axis, 0, &default_samples(), &cfg).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Precondition);
    let i = local(&["t", "x", "y"], &["y^2 - x^3"]);
    let err = whitney_family_check(&i, 0, &[q(1, 1)], &cfg).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Input);
    let err = whitney_family_check(&i, 0, &[q(1, 1), q(0, 1)], &cfg).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Input);
    // the fiber over 0 is a line, elsewhere a point
    let jump = local(&["t", "x", "y"], &["t*x", "y"]);
    let err = whitney_family_check(&jump, 0, &default_samples(), &cfg).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Precondition);
}

#[test]
fn verdicts_are_stable() {
    let other = Config {
        policy: GenericPolicy {
            seeds: vec![4, 44, 444],
            ..GenericPolicy::default()
        },
        ..Config::default()
    };
    let cases: [(&[&str], Vec<&str>); 3] = [
        (&["t", "x", "y"], vec!["y^2 - x^3 - t^2*x^2"]),
        (&["t", "x", "y"], vec!["y^2 - x^3"]),
        (&["v", "u1", "u2", "u3"], SURFACE_IN_C4.to_vec()),
    ];
    for (vars, gens) in cases {
        let i = local(vars, &gens);
        let mut verdicts = Vec::new();
        for cfg in [Config::default(), other.clone()] {
            for samples in [default_samples(), vec![q(3, 1), q(-1, 3)]] {
                let v = whitney_family_check(&i, 0, &samples, &cfg).unwrap();
                if v.verdict == Verdict::Whitney {
                    assert!(equimultiple_along_axis(&i, 0, &samples, Limits::default()).unwrap());
                }
                verdicts.push(v.verdict);
            }
        }
        assert!(verdicts.iter().all(|v| *v == verdicts[0]), "{gens:?}");
    }
}

#[test]
fn exceptional_cone_of_the_family_surface() {
    let i = local(&["t", "x", "y"], &["y^2 - x^3 - t^2*x^2"]);
    let r = exceptional_cone_test(&i, &Config::default()).unwrap();
    assert!(r.has_exceptional);
    assert_eq!(r.method, ExceptionalMethod::FixedPart);
    assert_eq!(r.reducedness, Reducedness::NotReduced);
    assert_eq!(r.fixed_components.len(), 1);
    // the fixed part is supported on the t-axis
    let fixed = &r.fixed_components[0];
    let gb = compute_basis(fixed, &MonomialOrder::DegRevLex, Limits::default()).unwrap();
    assert_eq!(gb.dimension(), 1);
    let on_axis = |pt: [Coeff; 3]| {
        fixed.gens().iter().all(|g| {
            let mut e = g.clone();
            for (j, c) in pt.iter().enumerate() {
                e = e.evaluate_var(j, c);
            }
            e.is_zero()
        })
    };
    assert!(on_axis([q(1, 1), q(0, 1), q(0, 1)]));
    assert!(!on_axis([q(1, 1), q(1, 1), q(0, 1)]));
    assert!(!on_axis([q(1, 1), q(0, 1), q(1, 1)]));
}

#[test]
fn cones_and_smooth_germs_have_no_exceptional_cones() {
    for (vars, gens) in [
        (vec!["x", "y", "z"], vec!["x^2 + y^2 + z^2"]),
        (vec!["x", "y", "z"], vec!["z - x^2 - y^2"]),
        (vec!["x", "y"], vec!["x*y*(x - y)"]),
    ] {
        let i = local(&vars, &gens);
        let r = exceptional_cone_test(&i, &Config::default()).unwrap();
        assert!(!r.has_exceptional, "{gens:?}");
        assert!(r.fixed_components.is_empty());
        let fam = r.family.unwrap();
        assert_eq!(fam.profile_at_0, fam.profile_generic, "{gens:?}");
    }
}

#[test]
fn non_reduced_cones_are_rejected_outside_surfaces() {
    let i = local(&["x", "y"], &["y^2 - x^3"]);
    let err = exceptional_cone_test(&i, &Config::default()).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Precondition);
}
