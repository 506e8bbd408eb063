mod common;

use germlab::basis::{
    colon_poly, compute_basis, eliminate, hilbert_of_monomials, ideals_equal, intersect, modular_leading_monomials,
    modular_variable_saturation_leading_monomials, normal_form, saturate, Limits, MODULAR_PRIMES,
};
use num_bigint::BigUint;
use germlab::poly::{ideal_in, parse_polynomial, Ideal, Locus, Monomial, MonomialOrder, Polynomial};

use common::{brute_force_colength, linear_membership};

fn lim() -> Limits {
    Limits::default()
}

#[test]
fn normal_form_examples() {
    let i = ideal_in(&["x", "y"], Locus::Affine, &["x"]).unwrap();
    let r = i.ring();
    let x2 = parse_polynomial(r, "x^2").unwrap();
    assert!(normal_form(&x2, i.gens(), &MonomialOrder::DegRevLex, lim()).unwrap().is_zero());
    let p = parse_polynomial(r, "3*x*y - 1/2*y^2 + 7").unwrap();
    assert_eq!(normal_form(&p, &[], &MonomialOrder::DegRevLex, lim()).unwrap(), p);

    // y^3 is not divisible by the leading monomials x (of x - y^2) and xy under ds
    let j = ideal_in(&["x", "y"], Locus::Local, &["x - y^2", "x*y"]).unwrap();
    let y3 = parse_polynomial(j.ring(), "y^3").unwrap();
    let nf = normal_form(&y3, j.gens(), &MonomialOrder::NegDegRevLex, lim()).unwrap();
    assert!(!nf.is_zero());
}

#[test]
fn standard_basis_examples() {
    let ds = MonomialOrder::NegDegRevLex;
    let i = ideal_in(&["x", "y"], Locus::Local, &["y^2 - x^3"]).unwrap();
    let sb = compute_basis(&i, &ds, lim()).unwrap();
    assert_eq!(sb.basis(), i.gens());

    let j = ideal_in(&["x", "y"], Locus::Local, &["x - y^2", "x*y"]).unwrap();
    let sb = compute_basis(&j, &ds, lim()).unwrap();
    let y3 = parse_polynomial(j.ring(), "y^3").unwrap();
    assert!(sb.basis().contains(&y3), "{:?}", sb.basis());
    assert!(sb.is_confluent(lim()).unwrap());
    assert_eq!(sb.colength().unwrap(), 3);

    let k = ideal_in(&["x", "y"], Locus::Affine, &["x^2", "y^3"]).unwrap();
    for order in [MonomialOrder::DegRevLex, MonomialOrder::Lex, ds.clone()] {
        let b = compute_basis(&k, &order, lim()).unwrap();
        assert_eq!(b.basis().len(), 2);
        assert!(b.contains(&k.gens()[0]).unwrap() && b.contains(&k.gens()[1]).unwrap());
    }
}

#[test]
fn elimination_examples() {
    let i = ideal_in(&["x", "y"], Locus::Affine, &["y^2 - x"]).unwrap();
    assert!(eliminate(&i, &[1], lim()).unwrap().is_zero());
    let j = ideal_in(&["x", "y", "z"], Locus::Affine, &["x - y^2", "x - z"]).unwrap();
    let e = eliminate(&j, &[0], lim()).unwrap();
    let expected = Ideal::new(j.ring(), vec![parse_polynomial(j.ring(), "y^2 - z").unwrap()]).unwrap();
    assert!(ideals_equal(&e, &expected, lim()).unwrap());
    assert_eq!(eliminate(&j, &[], lim()).unwrap(), j);
}

#[test]
fn elimination_projects_solution_set() {
    // points (1,2), (1,3), (2,5): the projection to y is {2,3,5}
    let i = ideal_in(
        &["x", "y"],
        Locus::Affine,
        &["(x-1)*(x-2)", "(y-2)*(y-3)*(y-5)", "(x-1)*(y-5)", "(x-2)*(y-2)*(y-3)"],
    )
    .unwrap();
    let e = eliminate(&i, &[0], lim()).unwrap();
    let r = i.ring();
    let expected = Ideal::new(r, vec![parse_polynomial(r, "(y-2)*(y-3)*(y-5)").unwrap()]).unwrap();
    assert!(ideals_equal(&e, &expected, lim()).unwrap());
}

#[test]
fn saturation_examples() {
    let i = ideal_in(&["x", "y"], Locus::Affine, &["x*y"]).unwrap();
    let r = i.ring().clone();
    let x = Ideal::new(&r, vec![Polynomial::var(&r, 0)]).unwrap();
    let s = saturate(&i, &x, lim()).unwrap();
    let y = Ideal::new(&r, vec![Polynomial::var(&r, 1)]).unwrap();
    assert!(ideals_equal(&s, &y, lim()).unwrap());

    let j = ideal_in(&["x", "y"], Locus::Affine, &["x^2", "x*y"]).unwrap();
    let s = saturate(&j, &Ideal::maximal(&r), lim()).unwrap();
    assert!(ideals_equal(&s, &x, lim()).unwrap());

    let s = saturate(&j, &Ideal::unit(&r), lim()).unwrap();
    assert!(ideals_equal(&s, &j, lim()).unwrap());
}

#[test]
fn colon_and_intersection() {
    let i = ideal_in(&["x", "y"], Locus::Affine, &["x^2*y", "x*y^2"]).unwrap();
    let r = i.ring();
    let q = colon_poly(&i, &parse_polynomial(r, "x").unwrap(), lim()).unwrap();
    let expected = ideal_in(&["x", "y"], Locus::Affine, &["x*y", "y^2"]).unwrap();
    assert!(ideals_equal(&q, &expected, lim()).unwrap());
    let a = ideal_in(&["x", "y"], Locus::Affine, &["x"]).unwrap();
    let b = ideal_in(&["x", "y"], Locus::Affine, &["y"]).unwrap();
    let m = intersect(&a, &b, lim()).unwrap();
    let xy = ideal_in(&["x", "y"], Locus::Affine, &["x*y"]).unwrap();
    assert!(ideals_equal(&m, &xy, lim()).unwrap());
}

#[test]
fn dimension_examples() {
    let dp = MonomialOrder::DegRevLex;
    let a = ideal_in(&["x", "y", "z"], Locus::Affine, &["x^2"]).unwrap();
    assert_eq!(compute_basis(&a, &dp, lim()).unwrap().dimension(), 2);
    let b = ideal_in(&["x", "y"], Locus::Affine, &["x", "y"]).unwrap();
    assert_eq!(compute_basis(&b, &dp, lim()).unwrap().dimension(), 0);
    let c = ideal_in(&["x", "y", "z"], Locus::Local, &["x^2 - y^2*z"]).unwrap();
    assert_eq!(compute_basis(&c, &MonomialOrder::NegDegRevLex, lim()).unwrap().dimension(), 2);
    let u = ideal_in(&["x", "y"], Locus::Local, &["1 + x"]).unwrap();
    assert_eq!(compute_basis(&u, &MonomialOrder::NegDegRevLex, lim()).unwrap().dimension(), -1);
}

#[test]
fn colength_examples_against_oracle() {
    for gens in [vec!["x", "y"], vec!["x^2", "y^3"], vec!["x^2", "x*y", "y^2"], vec!["x^2 + y^3", "x*y"]] {
        let i = ideal_in(&["x", "y"], Locus::Local, &gens).unwrap();
        let sb = compute_basis(&i, &MonomialOrder::NegDegRevLex, lim()).unwrap();
        assert_eq!(sb.colength().unwrap(), brute_force_colength(&i, 12), "{gens:?}");
    }
}

#[test]
fn hilbert_examples() {
    let i = ideal_in(&["x", "y"], Locus::Projective, &["x^2", "y^3"]).unwrap();
    let h = germlab::basis::hilbert(&i, lim()).unwrap();
    assert_eq!(h.reduced, vec![1, 2, 2, 1]);
    assert_eq!(h.multiplicity, 6);
    let z = hilbert_of_monomials(&[], 1);
    assert_eq!((z.dimension, z.multiplicity), (1, 1));
    let c = ideal_in(&["x", "y", "z"], Locus::Projective, &["x^2"]).unwrap();
    let h = germlab::basis::hilbert(&c, lim()).unwrap();
    assert_eq!((h.dimension, h.multiplicity, h.reduced), (2, 2, vec![1, 1]));
    let bad = ideal_in(&["x", "y"], Locus::Affine, &["x^2 - y"]).unwrap();
    assert!(germlab::basis::hilbert(&bad, lim()).is_err());
}

#[test]
fn membership_matches_linear_algebra() {
    let i = ideal_in(&["x", "y", "z"], Locus::Affine, &["x^2 - y*z", "x*y - z^2"]).unwrap();
    let gb = compute_basis(&i, &MonomialOrder::DegRevLex, lim()).unwrap();
    let r = i.ring();
    for f in ["x^3*z - y*z^3", "y^2*z - x*z^2", "x^2*y - z^3", "x*z - y^2", "x^3 - y^3", "y^3 - x*z^2"] {
        let p = parse_polynomial(r, f).unwrap();
        assert_eq!(gb.contains(&p).unwrap(), linear_membership(&i, &p), "{f}");
    }
}

fn is_probable_prime(n: u64) -> bool {
    let n = BigUint::from(n);
    let one = BigUint::from(1u32);
    let minus_one = &n - &one;
    let mut d = minus_one.clone();
    let mut s = 0;
    while (&d % 2u32) == BigUint::from(0u32) {
        d /= 2u32;
        s += 1;
    }
    [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37].iter().all(|&a| {
        let mut x = BigUint::from(a).modpow(&d, &n);
        if x == one || x == minus_one {
            return true;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), &n);
            if x == minus_one {
                return true;
            }
        }
        false
    })
}

#[test]
fn modular_primes_are_prime() {
    for p in MODULAR_PRIMES {
        assert!(is_probable_prime(p), "{p}");
    }
    assert!(!is_probable_prime((1u64 << 61) + 1));
}

/// Minimal generators of the monomial ideal, sorted.
fn minimal(v: Vec<Monomial>) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    for m in &v {
        if !v.iter().any(|o| o != m && o.divides(m)) && !out.contains(m) {
            out.push(m.clone());
        }
    }
    out.sort_by(|a, b| a.exponents().cmp(b.exponents()));
    out
}

#[test]
fn modular_leading_monomials_match_exact_bases() {
    let cases: [(&[&str], &[&str]); 5] = [
        (&["x", "y"], &["x - y^2", "x*y"]),
        (&["x", "y", "z"], &["x*y - z^3", "x^2 + y^3"]),
        (&["x", "y", "z"], &["5*x^3 - 7/3*y*z", "y^2 - 11*x*z + z^4"]),
        (&["x", "y", "z"], &["z^5 + x*y^7 + x^15", "5*z^4", "y^7 + 15*x^14", "7*x*y^6"]),
        (&["t", "x", "y"], &["y^2 - x^3 - t^2*x^2", "2*y", "-3*x^2 - 2*t^2*x"]),
    ];
    for order in [MonomialOrder::NegDegRevLex, MonomialOrder::DegRevLex, MonomialOrder::Lex] {
        for (vars, gens) in cases {
            let i = ideal_in(vars, Locus::Local, gens).unwrap();
            let exact = compute_basis(&i, &order, lim()).unwrap().leading_monomials();
            let modular = modular_leading_monomials(&i, &order, lim()).unwrap();
            assert_eq!(minimal(exact), minimal(modular), "{gens:?}");
        }
    }
}

#[test]
fn modular_variable_saturation_matches_exact_saturation() {
    let cases: [(&[&str], &[&str], &str); 3] = [
        (&["x", "y"], &["x*y", "x^2"], "x"),
        (&["x", "y", "z"], &["x*z - y^2*z", "z^2"], "z"),
        (&["t", "x", "y"], &["x*y - t*x", "x^2 - t^2*x"], "x"),
    ];
    for (vars, gens, var) in cases {
        let i = ideal_in(vars, Locus::Local, gens).unwrap();
        let r = i.ring().clone();
        let v = r.index_of(var).unwrap();
        let sat = saturate(&i, &ideal_in(vars, Locus::Local, &[var]).unwrap(), lim()).unwrap();
        for order in [MonomialOrder::NegDegRevLex, MonomialOrder::DegRevLex] {
            let exact = compute_basis(&sat, &order, lim()).unwrap().leading_monomials();
            let modular = modular_variable_saturation_leading_monomials(&i, v, &order, lim()).unwrap();
            assert_eq!(minimal(exact), minimal(modular), "{gens:?}");
        }
    }
}
