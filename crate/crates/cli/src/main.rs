use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use germlab::basis::Limits;
use germlab::generic::{Draw, GenericPolicy, GenericityRecord, DEFAULT_HEIGHT, DEFAULT_SEEDS};
use germlab::germ::{
    check_specialization, local_dimension, milnor, milnor_sequence, multiplicity, normal_cone, specialization_family,
    tangent_cone,
};
use germlab::polar::{
    conormal_ideal, dual_degree_via_polar, dual_variety, euler_obstruction, generic_polar_multiplicity, polar_ideal,
    polar_profile, PolarProfile, ProjectionFrame,
};
use germlab::poly::{parse_input, parse_rational, Coeff, Ideal, ParsedInput, Polynomial};
use germlab::topology::{
    chi_projective_hypersurface_isolated, evaluate_general_plucker, evaluate_lt_formula, isolated_lt_star,
    isolated_strata, plucker_isolated, vanishing_chi_isolated, LtStar, StratumInvariants,
};
use germlab::whitney::{default_samples, exceptional_cone_test, whitney_family_check, WhitneyVerdict};
use germlab::{Config, Error, ErrorKind};

const EXIT_INPUT: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_GENERICITY: u8 = 4;

#[derive(Args, Clone)]
struct Common {
    /// Seed for generic choices; repeat for more seeds.
    #[arg(long = "seed", global = true)]
    seeds: Vec<u64>,
    /// Coefficient bound for generic linear forms.
    #[arg(long, global = true, default_value_t = DEFAULT_HEIGHT)]
    height: u64,
    /// Reduction-step budget per basis computation.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args)]
struct Input {
    /// Germ file.
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Tangent cone at the origin.
    TangentCone(Input),
    /// Normal cone along a coordinate subspace.
    NormalCone {
        /// Variables spanning the subspace; defaults to the declared axis.
        #[arg(long, value_delimiter = ',')]
        axis: Vec<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Multiplicity at the origin.
    Multiplicity(Input),
    /// Specialization to the tangent cone.
    Specialize(Input),
    /// Milnor number of a hypersurface germ.
    Milnor(Input),
    /// Milnor numbers of general plane sections.
    MilnorSeq(Input),
    /// Multiplicity of a general polar variety.
    Polar {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Polar multiplicity profile.
    Profile(Input),
    /// Conormal space.
    Conormal(Input),
    /// Dual variety by elimination.
    Dual(Input),
    /// Degree of the dual variety from polar multiplicities.
    DualDegree(Input),
    /// Local Euler obstruction.
    EulerObstruction(Input),
    /// Vanishing Euler characteristic with --i, else Euler characteristic of a projective hypersurface.
    Chi {
        #[arg(long)]
        i: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Degree of the dual of a hypersurface with isolated singularities.
    Plucker(Input),
    /// Generalized Plücker formula from stratum invariants.
    PluckerGeneral {
        /// Stratum invariants as JSON.
        #[arg(long)]
        strata: Option<PathBuf>,
        /// Projective hypersurface with isolated singularities.
        input: Option<PathBuf>,
    },
    /// Residual of the local Euler characteristic formula at a stratum.
    LtFormula {
        /// Incidence star as JSON.
        #[arg(long)]
        strata: Option<PathBuf>,
        /// Hypersurface germ with an isolated singularity.
        input: Option<PathBuf>,
    },
    /// Whitney equisingularity of a family along its axis.
    Whitney {
        /// Parameter variable; defaults to the declared axis.
        #[arg(long)]
        axis: Option<String>,
        /// Parameter values compared with 0; repeat for more.
        #[arg(long = "t", allow_hyphen_values = true)]
        t: Vec<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Exceptional cones of a germ.
    Exceptional(Input),
}

#[derive(Parser)]
#[command(name = "germlab", version, about = "Exact local invariants of singularities")]
struct Full {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::TangentCone(_) => "tangent-cone",
            Command::NormalCone { .. } => "normal-cone",
            Command::Multiplicity(_) => "multiplicity",
            Command::Specialize(_) => "specialize",
            Command::Milnor(_) => "milnor",
            Command::MilnorSeq(_) => "milnor-seq",
            Command::Polar { .. } => "polar",
            Command::Profile(_) => "profile",
            Command::Conormal(_) => "conormal",
            Command::Dual(_) => "dual",
            Command::DualDegree(_) => "dual-degree",
            Command::EulerObstruction(_) => "euler-obstruction",
            Command::Chi { .. } => "chi",
            Command::Plucker(_) => "plucker",
            Command::PluckerGeneral { .. } => "plucker-general",
            Command::LtFormula { .. } => "lt-formula",
            Command::Whitney { .. } => "whitney",
            Command::Exceptional(_) => "exceptional",
        }
    }

    /// The file the report hashes: the germ, or the strata file.
    fn input_path(&self) -> Option<&Path> {
        match self {
            Command::TangentCone(i)
            | Command::Multiplicity(i)
            | Command::Specialize(i)
            | Command::Milnor(i)
            | Command::MilnorSeq(i)
            | Command::Profile(i)
            | Command::Conormal(i)
            | Command::Dual(i)
            | Command::DualDegree(i)
            | Command::EulerObstruction(i)
            | Command::Plucker(i)
            | Command::Exceptional(i)
            | Command::NormalCone { input: i, .. }
            | Command::Polar { input: i, .. }
            | Command::Chi { input: i, .. }
            | Command::Whitney { input: i, .. } => Some(&i.input),
            Command::PluckerGeneral { strata, input } | Command::LtFormula { strata, input } => {
                strata.as_deref().or(input.as_deref())
            }
        }
    }
}

/// Failure of a run, mapped onto an exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match e.kind() {
            ErrorKind::Input => (EXIT_INPUT, "input"),
            ErrorKind::Precondition => (EXIT_PRECONDITION, "precondition"),
            ErrorKind::Budget => (EXIT_BUDGET, "budget"),
            ErrorKind::Genericity => (EXIT_GENERICITY, "genericity"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

fn input_failure(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        kind: "input",
        message: message.into(),
    }
}

type Outcome = std::result::Result<(Value, Vec<GenericityRecord>), Failure>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_failure(format!("cannot read {}: {e}", path.display())))
}

fn load(input: &Input) -> std::result::Result<ParsedInput, Failure> {
    Ok(parse_input(&read(&input.input)?)?)
}

fn load_ideal(input: &Input) -> std::result::Result<Ideal, Failure> {
    Ok(load(input)?.ideal)
}

fn principal(ideal: &Ideal) -> std::result::Result<Polynomial, Failure> {
    match ideal.gens() {
        [f] => Ok(f.clone()),
        _ => Err(Error::Precondition("a hypersurface (one generator) is required".into()).into()),
    }
}

fn var_index(ideal: &Ideal, name: &str) -> std::result::Result<usize, Failure> {
    ideal
        .ring()
        .index_of(name)
        .ok_or_else(|| Failure::from(Error::UnknownVariable(name.to_string())))
}

fn ring_names(ideal: &Ideal) -> Vec<String> {
    ideal.ring().var_names().to_vec()
}

fn profile_certificates<'a>(profiles: impl IntoIterator<Item = &'a PolarProfile>) -> Vec<GenericityRecord> {
    profiles.into_iter().flat_map(|p| p.certificates.iter().cloned()).collect()
}

fn whitney_certificates(v: &WhitneyVerdict) -> Vec<GenericityRecord> {
    profile_certificates(
        std::iter::once(&v.profile_at_0)
            .chain(&v.sample_profiles)
            .chain(&v.fiber_profiles),
    )
}

fn run(command: &Command, config: &Config) -> Outcome {
    let limits = config.limits;
    match command {
        Command::TangentCone(input) => {
            let cone = tangent_cone(&load_ideal(input)?, limits)?;
            Ok((json!({ "kind": cone.kind, "ideal": cone.ideal }), Vec::new()))
        }
        Command::NormalCone { axis, input } => {
            let ideal = load_ideal(input)?;
            let idx: Vec<usize> = if axis.is_empty() {
                ideal.ring().axis().to_vec()
            } else {
                axis.iter().map(|a| var_index(&ideal, a)).collect::<std::result::Result<_, _>>()?
            };
            if idx.is_empty() {
                return Err(input_failure("no axis given and none declared in the input"));
            }
            let cone = normal_cone(&ideal, &idx, limits)?;
            Ok((json!({ "kind": cone.kind, "ideal": cone.ideal }), Vec::new()))
        }
        Command::Multiplicity(input) => {
            let m = multiplicity(&load_ideal(input)?, limits)?;
            Ok((json!({ "multiplicity": m }), Vec::new()))
        }
        Command::Specialize(input) => {
            let ideal = load_ideal(input)?;
            let family = specialization_family(&ideal, limits)?;
            let checked = check_specialization(&ideal, &family, limits)?;
            let names = ring_names(&family.ideal);
            Ok((
                json!({
                    "ring": names,
                    "parameter": names[family.parameter],
                    "ideal": family.ideal,
                    "fibers_checked": checked,
                }),
                Vec::new(),
            ))
        }
        Command::Milnor(input) => {
            let f = principal(&load_ideal(input)?)?;
            Ok((json!({ "milnor": milnor(&f, limits)? }), Vec::new()))
        }
        Command::MilnorSeq(input) => {
            let f = principal(&load_ideal(input)?)?;
            let seq = milnor_sequence(&f, config)?;
            Ok((json!({ "milnor_sequence": seq.mu }), seq.records))
        }
        Command::Polar { k, input } => {
            let ideal = load_ideal(input)?;
            let d = local_dimension(&ideal, limits)?;
            if d < 1 || *k as i64 >= d {
                return Err(input_failure(format!("k must satisfy 0 <= k < {d}, the germ dimension")));
            }
            let d = d as usize;
            if *k == 0 {
                let m = multiplicity(&ideal, limits)?;
                return Ok((json!({ "k": k, "dimension": d, "multiplicity": m }), vec![GenericityRecord::exact()]));
            }
            let (m, rec) = germlab::generic::certify(&config.policy, |seed, height| {
                generic_polar_multiplicity(&ideal, d, *k, seed, height, limits)
            })?;
            let seed = rec.seeds[0];
            let mut draw = Draw::new(seed, 1000 + *k as u64, rec.height);
            let frame = ProjectionFrame::generic(ideal.ring(), d - k + 1, &mut draw, seed)?;
            let polar = polar_ideal(&ideal, *k, &frame, limits)?;
            Ok((
                json!({
                    "k": k,
                    "dimension": d,
                    "multiplicity": m,
                    "frame": frame.forms.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    "polar_ideal": polar,
                }),
                vec![rec],
            ))
        }
        Command::Profile(input) => {
            let p = polar_profile(&load_ideal(input)?, config)?;
            Ok((json!({ "profile": p.m }), p.certificates))
        }
        Command::Conormal(input) => {
            let c = conormal_ideal(&load_ideal(input)?, limits)?;
            Ok((json!({ "ring": ring_names(&c), "ideal": c }), Vec::new()))
        }
        Command::Dual(input) => {
            let r = dual_variety(&load_ideal(input)?, limits)?;
            let certs = r.certificates.clone();
            Ok((to_value(&r), certs))
        }
        Command::DualDegree(input) => {
            let r = dual_degree_via_polar(&load_ideal(input)?, config)?;
            let certs = r.certificates.clone();
            Ok((to_value(&r), certs))
        }
        Command::EulerObstruction(input) => {
            let (eu, p) = euler_obstruction(&load_ideal(input)?, config)?;
            Ok((json!({ "euler_obstruction": eu, "profile": p.m }), p.certificates))
        }
        Command::Chi { i, input } => {
            let f = principal(&load_ideal(input)?)?;
            match i {
                Some(i) => {
                    let chi = vanishing_chi_isolated(&f, *i, config)?;
                    Ok((json!({ "i": i, "vanishing_chi": chi }), Vec::new()))
                }
                None => {
                    let r = chi_projective_hypersurface_isolated(&f, config)?;
                    let certs = r.singularities.points.iter().flat_map(|p| p.certificates.clone()).collect();
                    Ok((to_value(&r), certs))
                }
            }
        }
        Command::Plucker(input) => {
            let f = principal(&load_ideal(input)?)?;
            let r = plucker_isolated(&f, config)?;
            let certs = r.singularities.points.iter().flat_map(|p| p.certificates.clone()).collect();
            Ok((to_value(&r), certs))
        }
        Command::PluckerGeneral { strata, input } => {
            let (strata, d) = match (strata, input) {
                (Some(path), None) => {
                    let s: Vec<StratumInvariants> = serde_json::from_str(&read(path)?)
                        .map_err(|e| input_failure(format!("{}: {e}", path.display())))?;
                    let d = s.iter().map(|s| s.dim).max().ok_or_else(|| input_failure("no strata given"))?;
                    (s, d)
                }
                (None, Some(path)) => {
                    let f = principal(&load_ideal(&Input { input: path.clone() })?)?;
                    isolated_strata(&f, config)?
                }
                _ => return Err(input_failure("give exactly one of --strata FILE or an input germ")),
            };
            let value = evaluate_general_plucker(&strata, d)?;
            Ok((json!({ "dim": d, "strata": strata, "dual_degree": value }), Vec::new()))
        }
        Command::LtFormula { strata, input } => {
            let star: LtStar = match (strata, input) {
                (Some(path), None) => serde_json::from_str(&read(path)?)
                    .map_err(|e| input_failure(format!("{}: {e}", path.display())))?,
                (None, Some(path)) => {
                    let f = principal(&load_ideal(&Input { input: path.clone() })?)?;
                    isolated_lt_star(&f, config)?
                }
                _ => return Err(input_failure("give exactly one of --strata FILE or an input germ")),
            };
            let residual = evaluate_lt_formula(&star)?;
            Ok((json!({ "star": star, "residual": residual }), Vec::new()))
        }
        Command::Whitney { axis, t, input } => {
            let ideal = load_ideal(input)?;
            let axis = match axis {
                Some(a) => var_index(&ideal, a)?,
                None => match ideal.ring().axis() {
                    [a] => *a,
                    _ => return Err(input_failure("give --axis or declare exactly one axis variable")),
                },
            };
            let samples: Vec<Coeff> = if t.is_empty() {
                default_samples()
            } else {
                t.iter().map(|s| parse_rational(s)).collect::<germlab::Result<_>>()?
            };
            let v = whitney_family_check(&ideal, axis, &samples, config)?;
            let certs = whitney_certificates(&v);
            Ok((to_value(&v), certs))
        }
        Command::Exceptional(input) => {
            let r = exceptional_cone_test(&load_ideal(input)?, config)?;
            let certs = r.family.as_ref().map(whitney_certificates).unwrap_or_default();
            Ok((to_value(&r), certs))
        }
    }
}

fn sha256_hex(path: Option<&Path>) -> Value {
    match path.and_then(|p| std::fs::read(p).ok()) {
        Some(bytes) => Value::String(hex::encode(Sha256::digest(&bytes))),
        None => Value::Null,
    }
}

/// Lines `key: value`, nested keys joined with `.`, arrays of scalars inline.
fn render_text(value: &Value, prefix: &str, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render_text(v, &key, out);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                render_text(v, &format!("{prefix}[{i}]"), out);
            }
        }
        other => {
            out.push_str(prefix);
            out.push_str(": ");
            out.push_str(&scalar_text(other));
            out.push('\n');
        }
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar_text).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Full::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let common = cli.common;
    let seeds = if common.seeds.is_empty() {
        DEFAULT_SEEDS.to_vec()
    } else {
        common.seeds.clone()
    };
    let mut config = Config {
        policy: GenericPolicy {
            seeds: seeds.clone(),
            height: common.height,
            ..GenericPolicy::default()
        },
        ..Config::default()
    };
    if let Some(b) = common.budget {
        config.limits = Limits { steps: b };
    }

    let mut report = Map::new();
    report.insert("command".into(), json!(cli.command.name()));
    report.insert(
        "input".into(),
        json!(cli.command.input_path().map(|p| p.display().to_string())),
    );
    report.insert("input_sha256".into(), sha256_hex(cli.command.input_path()));
    report.insert("seeds".into(), json!(seeds));
    report.insert("height".into(), json!(config.policy.height));
    report.insert("budget".into(), json!(config.limits.steps));

    let outcome = if common.height == 0 {
        Err(input_failure("--height must be positive"))
    } else if common.budget == Some(0) {
        Err(input_failure("--budget must be positive"))
    } else {
        run(&cli.command, &config)
    };
    let code = match outcome {
        Ok((values, certificates)) => {
            report.insert("status".into(), json!("ok"));
            report.insert("certificates".into(), to_value(&certificates));
            report.insert("values".into(), values);
            0
        }
        Err(f) => {
            report.insert("status".into(), json!(f.kind));
            report.insert("error".into(), json!(f.message));
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    let report = Value::Object(report);
    if common.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    } else {
        let mut out = String::new();
        render_text(&report, "", &mut out);
        print!("{out}");
    }
    ExitCode::from(code)
}
