//! The `toric-degen` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use crate::approximation::{
    build_chain, initial_closure, order_growth_report, stabilization, truncate, validate_base, BranchSystem,
    Precision, TruncationIdeal,
};
use crate::deformation::{DeformationSystem, EquationKind};
use crate::degeneration::{degenerate, specialize, Family, SpecializeAt, Specialization};
use crate::error::{Error, Result};
use crate::parser::parse_poly;
use crate::poly::{random_polynomial, Polynomial, RandomShape};
use crate::problem::{load_path, Problem};
use crate::ring::{Monomial, WeightedRing};
use crate::semigroup::{elements_up_to, euler_identity_check, partition_count, SemigroupPresentation};
use crate::valuation::value_of;
use crate::value::{parse_rational, Valuation, Value};

#[derive(Parser, Debug)]
#[command(name = "toric-degen", version, about = "Overweight deformations, valuations and toric degenerations")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// x-adic precision T for composed values; automatic when absent.
    #[arg(long, global = true)]
    precision: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify the system as an overweight deformation.
    Check {
        file: PathBuf,
        /// Also test the valuation laws on this many random pairs.
        #[arg(long)]
        laws: Option<usize>,
    },
    /// Value of elements, with their normal forms.
    Value {
        file: PathBuf,
        /// Defaults to the file's queries.
        #[arg(long)]
        element: Vec<String>,
    },
    /// Partition counts of the weight semigroup.
    Partition {
        file: PathBuf,
        #[arg(long)]
        up_to: Option<String>,
        /// Compare with the product expansion.
        #[arg(long)]
        euler: bool,
        #[arg(long)]
        degree_cap: Option<u32>,
    },
    /// The degeneration family, optionally specialized.
    Degenerate {
        file: PathBuf,
        /// "0" for the toric fiber, or another value of v.
        #[arg(long)]
        at: Option<String>,
    },
    /// Semivaluations along a chain of truncations.
    Approx {
        file: PathBuf,
        /// Number of truncations in the chain.
        #[arg(long)]
        levels: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        elements: Vec<String>,
    },
    /// Equations, key polynomials and composed values of a plane branch.
    Branch {
        file: PathBuf,
        /// Polynomials in x and y to split by the key polynomials.
        #[arg(long)]
        element: Vec<String>,
    },
}

struct Report {
    json: Json,
    text: String,
}

/// Runs the command line; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let body = match cli.output {
                Output::Json => serde_json::to_string_pretty(&report.json).expect("json values serialize") + "\n",
                Output::Text => report.text,
            };
            let _ = out.write_all(body.as_bytes());
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = std::result::Result<Report, Failure>;

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Check { file, laws } => cmd_check(&load_path(file)?, *laws, cli.seed),
        Command::Value { file, element } => cmd_value(&load_path(file)?, element),
        Command::Partition {
            file,
            up_to,
            euler,
            degree_cap,
        } => cmd_partition(&load_path(file)?, up_to.as_deref(), *euler, *degree_cap),
        Command::Degenerate { file, at } => cmd_degenerate(&load_path(file)?, at.as_deref()),
        Command::Approx { file, levels, elements } => cmd_approx(&load_path(file)?, *levels, elements),
        Command::Branch { file, element } => cmd_branch(&load_path(file)?, element, cli.precision),
    }
}

fn value_json(v: &Value) -> Json {
    Json::Array(v.to_strings().into_iter().map(Json::String).collect())
}

fn valuation_json(v: &Valuation) -> Json {
    match v {
        Valuation::Finite(v) => value_json(v),
        Valuation::Infinite => json!("infinite"),
    }
}

fn polys_json(ps: &[Polynomial]) -> Json {
    ps.iter().map(|p| json!(p.to_string())).collect()
}

fn kind_name(kind: &EquationKind) -> &'static str {
    match kind {
        EquationKind::Fq => "Fq",
        EquationKind::Fi { .. } => "Fi",
    }
}

fn elements(problem: &Problem, given: &[String]) -> std::result::Result<Vec<Polynomial>, Failure> {
    if given.is_empty() {
        if problem.elements.is_empty() {
            return Err(Failure::Usage("no elements given and the file has no queries".into()));
        }
        return Ok(problem.elements.clone());
    }
    given
        .iter()
        .map(|e| parse_poly(e, problem.ring()).map_err(Failure::Domain))
        .collect()
}

fn certified(problem: &Problem) -> Result<DeformationSystem> {
    problem.system.clone().certify()
}

fn cmd_check(problem: &Problem, laws: Option<usize>, seed: u64) -> Outcome {
    let system = certified(problem)?;
    let cert = system.certificate()?;
    let heads = system.heads();
    let saturated = heads.is_saturated();
    let mut text = String::new();
    writeln!(text, "certified: yes").unwrap();
    writeln!(text, "ring: {}", describe_ring(system.ring())).unwrap();
    writeln!(text, "equations:").unwrap();
    for e in system.equations() {
        writeln!(text, "  [{}] {}", kind_name(e.kind()), e.poly()).unwrap();
    }
    writeln!(text, "dimension: {}", cert.dimension()).unwrap();
    writeln!(text, "lattice rank: {}", cert.lattice_rank()).unwrap();
    writeln!(text, "rational rank: {}", cert.rational_rank()).unwrap();
    writeln!(text, "saturated: {}", if saturated { "yes" } else { "no" }).unwrap();
    writeln!(
        text,
        "equations form a standard basis: {}",
        if cert.equations_are_standard_basis() { "yes" } else { "no" }
    )
    .unwrap();
    if !cert.redundant_heads().is_empty() {
        writeln!(text, "redundant heads: {:?}", cert.redundant_heads()).unwrap();
    }
    writeln!(text, "standard basis:").unwrap();
    for g in cert.standard_basis() {
        writeln!(text, "  {g}").unwrap();
    }
    let mut report = json!({
        "certified": true,
        "dimension": cert.dimension(),
        "lattice_rank": cert.lattice_rank(),
        "rational_rank": cert.rational_rank(),
        "saturated": saturated,
        "equations": system.equations().iter().map(|e| json!({
            "expr": e.poly().to_string(),
            "kind": kind_name(e.kind()),
        })).collect::<Vec<_>>(),
        "head_basis": polys_json(cert.head_basis()),
        "standard_basis": polys_json(cert.standard_basis()),
        "equations_are_standard_basis": cert.equations_are_standard_basis(),
        "redundant_heads": cert.redundant_heads(),
    });
    if let Some(n) = laws {
        let v = law_check(&system, n, seed)?;
        writeln!(
            text,
            "valuation laws on {n} random pairs (seed {seed}): {} violations",
            v.len()
        )
        .unwrap();
        for line in &v {
            writeln!(text, "  {line}").unwrap();
        }
        report["laws"] = json!({"pairs": n, "seed": seed, "violations": v});
        if !v.is_empty() {
            return Err(Failure::Domain(Error::Equation(format!(
                "{} valuation law violations",
                v.len()
            ))));
        }
    }
    Ok(Report { json: report, text })
}

fn describe_ring(ring: &WeightedRing) -> String {
    let vars: Vec<String> = ring
        .variables()
        .iter()
        .map(|v| format!("{}:{}", v.name, v.weight))
        .collect();
    format!("{}[{}]", ring.field(), vars.join(", "))
}

/// Multiplicativity, the ultrametric inequality and invariance under adding
/// ideal multiples, on random elements.
pub fn law_check(system: &DeformationSystem, pairs: usize, seed: u64) -> Result<Vec<String>> {
    let ring = system.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = RandomShape::default();
    let nu = |f: &Polynomial| value_of(f, system).map(|r| r.value);
    let mut violations = Vec::new();
    for _ in 0..pairs {
        let f = random_polynomial(ring, &mut rng, &shape);
        let g = random_polynomial(ring, &mut rng, &shape);
        let (vf, vg) = (nu(&f)?, nu(&g)?);
        let vfg = nu(&(&f * &g))?;
        if vfg != &vf + &vg {
            violations.push(format!("v({f} * {g}) = {vfg}, expected {}", &vf + &vg));
        }
        let vsum = nu(&(&f + &g))?;
        if vsum.try_cmp(&vf.clone().min(vg.clone()))?.is_lt() {
            violations.push(format!("v({f} + {g}) = {vsum} is below min({vf}, {vg})"));
        }
        for (k, eq) in system.equations().iter().enumerate() {
            let h = random_polynomial(ring, &mut rng, &shape);
            let shifted = &f + &(&h * eq.poly());
            let v = nu(&shifted)?;
            if v != vf {
                violations.push(format!("adding a multiple of equation {k} to {f} changes its value to {v}"));
            }
        }
    }
    Ok(violations)
}

fn cmd_value(problem: &Problem, given: &[String]) -> Outcome {
    let system = certified(problem)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for f in elements(problem, given)? {
        let r = value_of(&f, &system)?;
        writeln!(text, "{}", r.value).unwrap();
        if !given.is_empty() && given.len() == 1 {
            writeln!(text, "normal form: {}", r.witness).unwrap();
        } else {
            writeln!(text, "  element: {f}").unwrap();
            writeln!(text, "  normal form: {}", r.witness).unwrap();
        }
        rows.push(json!({
            "element": f.to_string(),
            "value": valuation_json(&r.value),
            "normal_form": r.witness.to_string(),
        }));
    }
    Ok(Report {
        json: json!({ "values": rows }),
        text,
    })
}

fn parse_value(s: &str, rank: usize) -> std::result::Result<Value, Failure> {
    let parts: Vec<&str> = s.trim_matches(|c| c == '(' || c == ')').split(',').map(str::trim).collect();
    let v = Value::parse_coords(&parts).map_err(|e| Failure::Usage(e.to_string()))?;
    if v.rank() != rank {
        return Err(Failure::Usage(format!("expected a value of rank {rank}, got {s:?}")));
    }
    Ok(v)
}

fn cmd_partition(problem: &Problem, up_to: Option<&str>, euler: bool, degree_cap: Option<u32>) -> Outcome {
    let ring = problem.ring();
    let bound = match up_to {
        Some(s) => parse_value(s, ring.rank())?,
        None => problem
            .up_to
            .clone()
            .ok_or_else(|| Failure::Usage("--up-to is required when the file has no bound".into()))?,
    };
    let cap = degree_cap.or(problem.file.queries.degree_cap);
    let sg = SemigroupPresentation::new(ring.weights())?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for gamma in elements_up_to(&sg, &bound, cap)? {
        let p = partition_count(&gamma, &sg, cap)?;
        writeln!(text, "{gamma}\t{p}").unwrap();
        rows.push(json!({"value": value_json(&gamma), "count": p.to_string()}));
    }
    let mut report = json!({"bound": value_json(&bound), "partitions": rows});
    if euler {
        let r = euler_identity_check(&sg, &bound)?;
        writeln!(
            text,
            "euler identity up to {bound}: {} ({} coefficients compared)",
            if r.holds { "holds" } else { "fails" },
            r.coefficients.len()
        )
        .unwrap();
        report["euler"] = json!({
            "holds": r.holds,
            "compared": r.coefficients.len(),
            "mismatches": r.mismatches.iter().map(value_json).collect::<Vec<_>>(),
        });
        if !r.holds {
            return Err(Failure::Domain(Error::Equation(format!(
                "euler identity fails at {} coefficients",
                r.mismatches.len()
            ))));
        }
    }
    Ok(Report { json: report, text })
}

fn tilde_monomial(ring: &WeightedRing, m: &Monomial) -> Json {
    m.exps()
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, e)| {
            let name = ring.name(i);
            let base = name.strip_suffix('t').unwrap_or(name);
            json!({"var": {"tilde": base}, "exp": e})
        })
        .collect()
}

fn family_json(fam: &Family) -> Json {
    let ring = fam.ring();
    fam.equations()
        .iter()
        .enumerate()
        .map(|(i, eq)| {
            json!({
                "kind": kind_name(&eq.kind),
                "text": fam.format_equation(i),
                "terms": eq.terms.iter().map(|t| json!({
                    "coeff": ring.field().display(&t.coeff).to_string(),
                    "v_exponent": t.v_exponent.to_string(),
                    "monomial": tilde_monomial(ring, &t.monomial),
                })).collect::<Vec<_>>(),
            })
        })
        .collect()
}

fn cmd_degenerate(problem: &Problem, at: Option<&str>) -> Outcome {
    let system = certified(problem)?;
    let fam = degenerate(&system)?;
    let Some(at) = at else {
        return Ok(Report {
            json: json!({"family": family_json(&fam)}),
            text: format!("{fam}\n"),
        });
    };
    let v0 = parse_rational(at).map_err(|e| Failure::Usage(e.to_string()))?;
    let point = if v0 == num_rational::BigRational::from_integer(0.into()) {
        SpecializeAt::Zero
    } else {
        SpecializeAt::Value(v0.clone())
    };
    let mut text = String::new();
    let report = match specialize(&fam, &point)? {
        Specialization::Toric(ideal) => {
            let polys = fam.special_fiber();
            debug_assert_eq!(polys.len(), ideal.binomials().len());
            for p in &polys {
                writeln!(text, "{p}").unwrap();
            }
            json!({"at": v0.to_string(), "fiber": "toric", "equations": polys_json(&polys)})
        }
        Specialization::System(s) => {
            let polys = s.polynomials();
            for p in &polys {
                writeln!(text, "{p}").unwrap();
            }
            let certified = s.certify().is_ok();
            writeln!(text, "certified: {}", if certified { "yes" } else { "no" }).unwrap();
            json!({"at": v0.to_string(), "fiber": "general", "equations": polys_json(&polys), "certified": certified})
        }
    };
    Ok(Report { json: report, text })
}

struct Chain {
    system: DeformationSystem,
    truncations: Vec<TruncationIdeal>,
}

fn chain_for(problem: &Problem, levels: Option<usize>) -> std::result::Result<Chain, Failure> {
    let (system, truncations) = match &problem.branch {
        Some(data) if problem.base == [0, 1] => {
            let b = BranchSystem::new(data.clone())?;
            let mut t = b.levels().to_vec();
            if let Some(n) = levels {
                if n == 0 {
                    return Err(Failure::Usage("--levels must be at least 1".into()));
                }
                let last = t.last().cloned().expect("a branch has a level");
                t.resize(n, last);
            }
            (b.system().clone(), t)
        }
        _ => {
            let system = certified(problem)?;
            validate_base(&system, &problem.base)?;
            let weights = system.ring().weights();
            let b0 = initial_closure(&problem.base.iter().copied().collect(), &weights)?;
            let n = levels
                .or(problem.file.queries.levels)
                .unwrap_or(weights.len() - b0.len() + 1);
            if n == 0 {
                return Err(Failure::Usage("--levels must be at least 1".into()));
            }
            let sets = build_chain(&b0, &weights, n - 1)?;
            let truncations = sets
                .iter()
                .map(|s| truncate(&system, s, &problem.base))
                .collect::<Result<Vec<_>>>()?;
            (system, truncations)
        }
    };
    Ok(Chain { system, truncations })
}

fn names(ring: &WeightedRing, set: &[usize]) -> String {
    let v: Vec<&str> = set.iter().map(|&i| ring.name(i)).collect();
    format!("{{{}}}", v.join(", "))
}

fn cmd_approx(problem: &Problem, levels: Option<usize>, given: &[String]) -> Outcome {
    let levels = levels.or(problem.file.queries.levels);
    let chain = chain_for(problem, levels)?;
    let ring = chain.system.ring().clone();
    let elems = elements(problem, given)?;
    let sets: Vec<_> = chain.truncations.iter().map(|t| t.set().clone()).collect();
    let growth = order_growth_report(&chain.system, &sets)?;
    let mut text = String::new();
    let mut level_rows = Vec::new();
    for (t, (trunc, row)) in chain.truncations.iter().zip(&growth.rows).enumerate() {
        let order = row.order.map_or("infinite".to_string(), |o| o.to_string());
        writeln!(text, "level {}: B = {}  ord K_B = {order}", t + 1, names(&ring, &trunc.set().to_vec())).unwrap();
        level_rows.push(json!({
            "level": t + 1,
            "set": trunc.set().to_vec(),
            "order": row.order,
            "generators": polys_json(&row.generators),
        }));
    }
    let mut element_rows = Vec::new();
    for f in &elems {
        let s = stabilization(f, &chain.truncations)?;
        let vals: Vec<String> = s.values.iter().map(ToString::to_string).collect();
        writeln!(
            text,
            "{f}: {}  stable from level {}  {}",
            vals.join(" | "),
            s.stable_from + 1,
            if s.consistent { "consistent" } else { "INCONSISTENT" }
        )
        .unwrap();
        element_rows.push(json!({
            "element": f.to_string(),
            "values": s.values.iter().map(valuation_json).collect::<Vec<_>>(),
            "stable_from": s.stable_from + 1,
            "consistent": s.consistent,
        }));
    }
    writeln!(
        text,
        "order growth: {}",
        if growth.nondecreasing { "nondecreasing" } else { "DECREASING" }
    )
    .unwrap();
    Ok(Report {
        json: json!({
            "levels": level_rows,
            "elements": element_rows,
            "order_nondecreasing": growth.nondecreasing,
        }),
        text,
    })
}

fn cmd_branch(problem: &Problem, given: &[String], precision: Option<u32>) -> Outcome {
    let data = problem
        .branch
        .clone()
        .ok_or_else(|| {
            Failure::Domain(Error::Load {
                path: "branch".into(),
                msg: "the file has no branch block".into(),
            })
        })?;
    let b = BranchSystem::new(data)?;
    let ring = b.ring().clone();
    let precision = precision.map_or(Precision::Auto, Precision::Fixed);
    let mut text = String::new();
    writeln!(text, "ring: {}", describe_ring(&ring)).unwrap();
    writeln!(text, "equations:").unwrap();
    for e in b.system().equations() {
        writeln!(text, "  {}", e.poly()).unwrap();
    }
    writeln!(text, "key polynomials:").unwrap();
    let betas = b.betas();
    for (i, (p, beta)) in b.key_polynomials().iter().zip(&betas).enumerate() {
        writeln!(text, "  p{} = {p}  (order {beta})", i + 1).unwrap();
    }
    let scaled = b.data().scaled_generators();
    writeln!(
        text,
        "semigroup: <{}> scaled by {}",
        scaled.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
        b.data().scale()
    )
    .unwrap();
    let mut composed = Vec::new();
    for e in given {
        let h = parse_poly(e, &ring)?;
        writeln!(text, "{h}:").unwrap();
        let mut rows = Vec::new();
        for level in 1..=b.genus() {
            let c = b.composed_value(&h, level, precision)?;
            writeln!(
                text,
                "  level {level}: p{level}^{} * ({})  value {}  (T = {})",
                c.n, c.cofactor, c.gamma, c.precision
            )
            .unwrap();
            rows.push(json!({
                "level": level,
                "n": c.n,
                "gamma": value_json(&c.gamma),
                "cofactor": c.cofactor.to_string(),
                "precision": c.precision,
            }));
        }
        composed.push(json!({"element": h.to_string(), "levels": rows}));
    }
    Ok(Report {
        json: json!({
            "equations": polys_json(&b.system().polynomials()),
            "key_polynomials": polys_json(b.key_polynomials()),
            "betas": betas,
            "semigroup": scaled,
            "scale": b.data().scale().to_string(),
            "gammas": b.data().gammas.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "composed": composed,
        }),
        text,
    })
}
