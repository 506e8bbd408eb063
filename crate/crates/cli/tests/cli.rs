use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn germ(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../germs").join(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_germlab")).args(args).output().unwrap()
}

fn run_json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    (v, out.status.code().unwrap())
}

fn validator() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn leaves(v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => m.values().for_each(|x| leaves(x, out)),
        Value::Array(a) => a.iter().for_each(|x| leaves(x, out)),
        Value::String(s) => out.push_str(&format!("{s}\n")),
        other => out.push_str(&format!("{other}\n")),
    }
}

fn digit_runs(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_ascii_digit())
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

#[test]
fn multiplicity_of_the_family_surface() {
    let out = run(&["multiplicity", &germ("cusp-node-family.germ")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "values.multiplicity: 2"), "{text}");
    let (v, code) = run_json(&["multiplicity", &germ("cusp-node-family.germ")]);
    assert_eq!(code, 0);
    assert_eq!(v["values"]["multiplicity"], 2);
    let (v, _) = run_json(&["multiplicity", &germ("surface-in-c4.germ")]);
    assert_eq!(v["values"]["multiplicity"], 4);
}

#[test]
fn plucker_of_the_nodal_cubic() {
    let (v, code) = run_json(&["plucker", &germ("nodal-cubic.germ")]);
    assert_eq!(code, 0);
    assert_eq!(v["values"]["value"], 4);
    let (d, _) = run_json(&["dual", &germ("nodal-cubic.germ")]);
    assert_eq!(d["values"]["dual_degree"], 4);
    let (g, _) = run_json(&["plucker-general", "--strata", &germ("nodal-cubic.strata.json")]);
    assert_eq!(g["values"]["dual_degree"], 4);
}

#[test]
fn briancon_speder_is_not_whitney() {
    let (v, code) = run_json(&["whitney", "--axis", "t", &germ("briancon-speder.germ")]);
    assert_eq!(code, 0);
    assert_eq!(v["values"]["verdict"], "not-whitney");
    assert_eq!(v["values"]["multiplicity_equimultiple"], true);
    assert!(validator().is_valid(&v));
}

#[test]
fn whitney_uses_the_declared_axis_and_samples() {
    let (v, code) = run_json(&["whitney", "--t", "3", "--t", "-1/3", &germ("product-family.germ")]);
    assert_eq!(code, 0);
    assert_eq!(v["values"]["verdict"], "whitney");
    assert_eq!(v["values"]["t_samples"], serde_json::json!(["3", "-1/3"]));
}

#[test]
fn reports_validate_against_the_schema() {
    let schema = validator();
    let cases: Vec<Vec<String>> = vec![
        vec!["tangent-cone".into(), germ("whitney-umbrella.germ")],
        vec!["normal-cone".into(), "--axis".into(), "t".into(), germ("cusp-node-family.germ")],
        vec!["specialize".into(), germ("cusp.germ")],
        vec!["milnor".into(), germ("cusp.germ")],
        vec!["milnor-seq".into(), germ("cusp.germ")],
        vec!["polar".into(), "--k".into(), "1".into(), germ("cusp-node-family.germ")],
        vec!["profile".into(), germ("whitney-umbrella.germ")],
        vec!["conormal".into(), germ("conic.germ")],
        vec!["dual-degree".into(), germ("conic.germ")],
        vec!["euler-obstruction".into(), germ("whitney-umbrella.germ")],
        vec!["chi".into(), germ("cuspidal-cubic.germ")],
        vec!["chi".into(), "--i".into(), "1".into(), germ("cusp.germ")],
        vec!["plucker-general".into(), germ("nodal-cubic.germ")],
        vec!["lt-formula".into(), "--strata".into(), germ("cusp-point.lt.json")],
        vec!["lt-formula".into(), germ("cusp.germ")],
        vec!["exceptional".into(), germ("cusp-node-family.germ")],
        vec!["chi".into(), germ("cusp.germ")],
        vec!["multiplicity".into(), "missing.germ".into()],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (v, code) = run_json(&args);
        let errors: Vec<String> = schema.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
        assert_eq!(code == 0, v["status"] == "ok", "{args:?}");
    }
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    for args in [
        vec!["profile", "--seed", "5", "--seed", "6"],
        vec!["milnor-seq"],
        vec!["exceptional"],
    ] {
        let mut a = args.clone();
        a.push(if args[0] == "milnor-seq" { "bs-fiber.germ" } else { "whitney-umbrella.germ" });
        let path = germ(a.pop().unwrap());
        a.push(&path);
        // numbers in the values only: text keys carry array indices
        let text: String = String::from_utf8(run(&a).stdout)
            .unwrap()
            .lines()
            .map(|l| l.split_once(": ").unwrap().1.to_string() + "\n")
            .collect();
        a.push("--json");
        let json: Value = serde_json::from_slice(&run(&a).stdout).unwrap();
        let mut json_leaves = String::new();
        leaves(&json, &mut json_leaves);
        let json = json_leaves;
        assert_eq!(digit_runs(&text), digit_runs(&json), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.germ");
    std::fs::write(&bad, "ring x,y;\nideal I = x y;\n").unwrap();
    let out = run(&["multiplicity", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));

    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["multiplicity"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    // not a projective hypersurface
    assert_eq!(run(&["plucker", &germ("cusp.germ")]).status.code(), Some(2));
    // the cone over a smooth conic is not a family with a singular axis
    assert_eq!(run(&["whitney", "--axis", "x", &germ("a1-surface.germ")]).status.code(), Some(2));
    assert_eq!(run(&["--budget", "5", "profile", &germ("bs-fiber.germ")]).status.code(), Some(3));
    assert_eq!(run(&["--budget", "0", "profile", &germ("cusp.germ")]).status.code(), Some(1));
    assert_eq!(run(&["polar", "--k", "3", &germ("cusp.germ")]).status.code(), Some(1));
    assert_eq!(run(&["plucker-general"]).status.code(), Some(1));
}

#[test]
fn reports_are_reproducible_and_hash_the_input() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.germ");
    let b = dir.path().join("b.germ");
    std::fs::write(&a, "ring x,y,z;\nideal I = x^2 - y^2*z;\n").unwrap();
    std::fs::write(&b, "ring x,y,z;\nideal I = x^2 - y^2*z^2;\n").unwrap();
    let (ra, _) = run_json(&["profile", a.to_str().unwrap()]);
    let (ra2, _) = run_json(&["profile", a.to_str().unwrap()]);
    let (rb, _) = run_json(&["profile", b.to_str().unwrap()]);
    assert_eq!(ra, ra2);
    assert_ne!(ra["input_sha256"], rb["input_sha256"]);
    assert_eq!(ra["values"]["profile"], serde_json::json!([2, 1]));
    let (other, _) = run_json(&["profile", "--seed", "7", "--seed", "8", a.to_str().unwrap()]);
    assert_eq!(other["seeds"], serde_json::json!([7, 8]));
    assert_eq!(other["values"], ra["values"]);
    // certification needs two seeds
    let (single, code) = run_json(&["profile", "--seed", "7", a.to_str().unwrap()]);
    assert_eq!((single["status"].as_str(), code), (Some("input"), 1));
}
