//! Command-line driver.  Every command writes its report to the given sink and
//! returns the process exit code: 0 for success or an irreducible verdict, 1 for
//! a negative verdict or a failed check, 2 for input errors (reported by `main`).

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{ExpVec, Rat};
use crate::geometry::{point_string, Polytope};
use crate::irreducibility::{expvec_json, test_polynomial, validate_exponent_sequence};
use crate::poly::{
    discriminant_fv, leading_v_coefficient, monomial_substitute, parse_weierstrass, parse_xy, poly_to_json,
    resultant_bareiss, weierstrass_check, MPoly,
};
use crate::series::{
    certified_polytope, certified_vertices, fitting_discriminant, weierstrass_preparation, TruncSeries,
};
use crate::tree::{build_tree, generate_polynomial, parse_sequence, FracSeries, RootsFile};

pub const DEFAULT_MAX_DEGREE: u32 = 64;
pub const DEFAULT_SEED: u64 = 20240917;

#[derive(Parser, Debug, Clone)]
#[command(name = "quasiord", version, about = "Irreducibility of quasi-ordinary Weierstrass polynomials")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Number of base variables `X1..Xd` (inferred from the input when omitted).
    #[arg(long = "d", global = true)]
    pub d: Option<usize>,
    /// Truncation order for power-series computations.
    #[arg(long, global = true, value_name = "N")]
    pub trunc: Option<u32>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, value_name = "S", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Where `generate` writes its polynomial and roots.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Decide irreducibility of a quasi-ordinary Weierstrass polynomial.
    Test { input: String },
    /// Print the discriminant of f(Y) - V.
    Disc { input: String },
    /// Print the Newton polytope of the discriminant.
    Polytope { input: String },
    /// Decompose the Newton polytope of the discriminant into elementary summands.
    Decompose { input: String },
    /// Build the tree model of a roots file.
    Tree { roots: PathBuf },
    /// Build an irreducible polynomial from characteristic exponents, e.g. "(1/4,1/4);(3/4,1/4)".
    Generate { sequence: String },
    /// Run the cross-validation battery on a polynomial or a generated file.
    Verify { input: String },
    /// Fitting discriminant of a Y-regular series, truncated.
    Fitting { input: String },
}

/// `QF_MAX_DEGREE`, or the default when unset or unparsable.
pub fn max_degree() -> u32 {
    std::env::var("QF_MAX_DEGREE").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_MAX_DEGREE)
}

fn guard_degree(degree: u32) -> Result<()> {
    let limit = max_degree();
    if degree > limit {
        return Err(Error::DegreeLimit { degree, limit });
    }
    Ok(())
}

/// A generated instance as stored by `generate --out`.
#[derive(Clone, Debug)]
struct Instance {
    polynomial: String,
    sequence: Option<Vec<ExpVec>>,
    roots: Option<RootsFile>,
}

/// Inline expression, a text file holding one, or a JSON file written by `generate`.
fn read_instance(arg: &str) -> Result<Instance> {
    let path = Path::new(arg);
    if !path.is_file() {
        return Ok(Instance { polynomial: arg.to_string(), sequence: None, roots: None });
    }
    let text = std::fs::read_to_string(path)?;
    if !text.trim_start().starts_with('{') {
        return Ok(Instance { polynomial: text.trim().to_string(), sequence: None, roots: None });
    }
    let v: Value = serde_json::from_str(&text)?;
    let polynomial = v["polynomial"].as_str().ok_or_else(|| Error::parse("missing \"polynomial\" field"))?.to_string();
    let sequence = match v.get("sequence").and_then(Value::as_array) {
        Some(items) => Some(
            items
                .iter()
                .map(|e| {
                    let parts: Vec<String> = e
                        .as_array()
                        .ok_or_else(|| Error::parse("bad sequence entry"))?
                        .iter()
                        .map(|x| x.as_str().unwrap_or("").to_string())
                        .collect();
                    ExpVec::parse(&format!("({})", parts.join(",")))
                })
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    let roots = match v.get("roots") {
        Some(r) => Some(serde_json::from_value(r.clone())?),
        None => None,
    };
    Ok(Instance { polynomial, sequence, roots })
}

fn parse_checked(expr: &str, d: Option<usize>) -> Result<MPoly<Rat>> {
    let f = parse_weierstrass(expr, d)?;
    guard_degree(f.total_degree().unwrap_or(0))?;
    Ok(f)
}

fn parse_series(expr: &str, d: Option<usize>) -> Result<MPoly<Rat>> {
    let f = parse_xy(expr, d)?;
    guard_degree(f.total_degree().unwrap_or(0))?;
    Ok(f)
}

fn emit(out: &mut dyn Write, cfg: &RunConfig, text: &str, value: Value) -> Result<()> {
    if cfg.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
    } else {
        write!(out, "{text}")?;
        if !text.ends_with('\n') {
            writeln!(out)?;
        }
    }
    Ok(())
}

fn seq_string(h: &[ExpVec]) -> String {
    h.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(";")
}

fn vertices_string(p: &Polytope) -> String {
    p.vertices().iter().map(|v| point_string(v)).collect::<Vec<_>>().join(" ")
}

/// Parses `args` (without the program name) and runs the command.
pub fn run_args<I, T>(args: I, out: &mut dyn Write) -> Result<i32>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once(std::ffi::OsString::from("quasiord")).chain(args.into_iter().map(Into::into));
    let cfg = RunConfig::try_parse_from(args).map_err(|e| Error::parse(e.to_string()))?;
    run(&cfg, out)
}

pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    match &cfg.command {
        Command::Test { input } => cmd_test(cfg, input, out),
        Command::Disc { input } => cmd_disc(cfg, input, out),
        Command::Polytope { input } => cmd_polytope(cfg, input, out),
        Command::Decompose { input } => cmd_decompose(cfg, input, out),
        Command::Tree { roots } => cmd_tree(cfg, roots, out),
        Command::Generate { sequence } => cmd_generate(cfg, sequence, out),
        Command::Verify { input } => cmd_verify(cfg, input, out),
        Command::Fitting { input } => cmd_fitting(cfg, input, out),
    }
}

fn cmd_test(cfg: &RunConfig, input: &str, out: &mut dyn Write) -> Result<i32> {
    let inst = read_instance(input)?;
    let f = parse_checked(&inst.polynomial, cfg.d)?;
    let report = test_polynomial(&f)?;
    emit(out, cfg, &report.to_string(), report.to_json())?;
    Ok(if report.is_irreducible() { 0 } else { 1 })
}

fn cmd_disc(cfg: &RunConfig, input: &str, out: &mut dyn Write) -> Result<i32> {
    let inst = read_instance(input)?;
    let f = parse_checked(&inst.polynomial, cfg.d)?;
    let d = discriminant_fv(&f)?;
    let value = json!({"discriminant": d.to_string(), "terms": poly_to_json(&d), "variables": d.ctx().names()});
    emit(out, cfg, &d.to_string(), value)?;
    Ok(0)
}

fn cmd_polytope(cfg: &RunConfig, input: &str, out: &mut dyn Write) -> Result<i32> {
    let inst = read_instance(input)?;
    let f = parse_checked(&inst.polynomial, cfg.d)?;
    let p = Polytope::newton(&discriminant_fv(&f)?)?;
    emit(out, cfg, &format!("vertices: {}", vertices_string(&p)), p.to_json())?;
    Ok(0)
}

fn cmd_decompose(cfg: &RunConfig, input: &str, out: &mut dyn Write) -> Result<i32> {
    let inst = read_instance(input)?;
    let f = parse_checked(&inst.polynomial, cfg.d)?;
    let p = Polytope::newton(&discriminant_fv(&f)?)?;
    match p.vertex_chain() {
        Ok(chain) => {
            let text = format!(
                "{chain}\nslopes: {}",
                chain.slopes().iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
            );
            let value = json!({
                "decomposition": chain.to_string(),
                "chain": chain.pairs.iter().map(|(l, m)| json!({"L": l, "M": m})).collect::<Vec<_>>(),
                "slopes": chain.slopes().iter().map(expvec_json).collect::<Vec<_>>(),
            });
            emit(out, cfg, &text, value)?;
            Ok(0)
        }
        Err(fail) => {
            let reason = format!("{fail:?}");
            emit(
                out,
                cfg,
                &format!("not a chain of elementary polytopes: {reason}"),
                json!({"decomposition": null, "failure": reason}),
            )?;
            Ok(1)
        }
    }
}

fn load_roots(path: &Path) -> Result<(RootsFile, Option<Vec<ExpVec>>)> {
    let text = std::fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&text)?;
    if v.get("roots").is_some_and(Value::is_object) {
        let inst = read_instance(path.to_str().ok_or_else(|| Error::invalid("path is not UTF-8"))?)?;
        return Ok((inst.roots.expect("has roots"), inst.sequence));
    }
    Ok((serde_json::from_value(v)?, None))
}

fn cmd_tree(cfg: &RunConfig, path: &Path, out: &mut dyn Write) -> Result<i32> {
    let (file, _) = load_roots(path)?;
    guard_degree(file.roots.len() as u32)?;
    let tree = build_tree(file.to_roots()?)?;
    let poly = tree.polytope()?;
    let decomposition = match poly.vertex_chain() {
        Ok(c) => c.to_string(),
        Err(_) => "none".to_string(),
    };
    let tree_type = tree.tree_type()?;
    let mut text = tree.render()?;
    text.push_str(&format!(
        "tree type: {}\npolytope: {}\nvertices: {}\n",
        tree_type.as_deref().map(seq_string).unwrap_or_else(|| "none".into()),
        decomposition,
        vertices_string(&poly)
    ));
    let mut value = tree.to_json()?;
    value["treeType"] =
        tree_type.map(|t| Value::from(t.iter().map(expvec_json).collect::<Vec<_>>())).unwrap_or(Value::Null);
    value["decomposition"] = Value::from(decomposition);
    value["polytope"] = poly.to_json();
    emit(out, cfg, &text, value)?;
    Ok(0)
}

fn cmd_generate(cfg: &RunConfig, sequence: &str, out: &mut dyn Write) -> Result<i32> {
    let h = parse_sequence(sequence)?;
    let check = validate_exponent_sequence(&h)?.into_result()?;
    guard_degree(u32::try_from(check.degree()).unwrap_or(u32::MAX))?;
    let g = generate_polynomial(&h)?;
    let n = g.f.degree_in(g.f.ctx().y().expect("has Y")).unwrap_or(0);
    let value = json!({
        "sequence": h.iter().map(expvec_json).collect::<Vec<_>>(),
        "d": g.f.ctx().d(),
        "degree": n,
        "nSeq": g.n,
        "polynomial": g.f.to_string(),
        "roots": serde_json::to_value(g.roots_file())?,
    });
    if let Some(path) = &cfg.out {
        std::fs::write(path, serde_json::to_string_pretty(&value)? + "\n")?;
    }
    let text = format!(
        "f = {}\ndegree: {n}\nindices n_i: ({})\n",
        g.f,
        g.n.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    );
    emit(out, cfg, &text, value)?;
    Ok(0)
}

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

fn random_weights(rng: &mut ChaCha8Rng, d: usize) -> Vec<u32> {
    (0..d).map(|_| rng.gen_range(1..=7)).collect()
}

/// Checks on a monic Weierstrass polynomial, plus tree checks when roots are known.
fn weierstrass_checks(f: &MPoly<Rat>, inst: &Instance, cfg: &RunConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let n = weierstrass_check(f)?;
    let ctx = f.ctx();
    let disc = discriminant_fv(f)?;
    let delta = Polytope::newton(&disc)?;

    let fv = f.to_context(&ctx.with_v())?;
    let v = fv.ctx().v().expect("has V");
    let shifted = fv.sub(&MPoly::var(fv.ctx(), v, Rat::from_integer(1.into())));
    if n <= 6 {
        let y = fv.ctx().y().expect("has Y");
        let res = if n == 1 { MPoly::one(fv.ctx()) } else { resultant_bareiss(&shifted, &fv.derivative(y), y)? };
        let res = res.to_context(&fv.ctx().without_y())?;
        let oracle = if (n * (n.saturating_sub(1)) / 2) % 2 == 1 { res.neg() } else { res };
        checks.push(Check::new(
            "discriminant-oracle",
            oracle == disc,
            "characteristic polynomial against fraction-free Sylvester determinant",
        ));
    }

    let lead = leading_v_coefficient(&disc, n)?;
    let sign = if ((n + 2) * (n - 1) / 2) % 2 == 1 { -1 } else { 1 };
    let expected = Rat::from_integer(num_bigint::BigInt::from(n).pow(n)) * Rat::from_integer(sign.into());
    checks.push(Check::new(
        "d0-law",
        lead.as_constant() == Some(expected.clone()),
        format!("V^{} coefficient {lead}, expected {expected}", n - 1),
    ));

    let fit = fitting_discriminant(&TruncSeries::exact(f.clone()), 0)?;
    checks.push(Check::new(
        "fitting-equals-discriminant",
        fit.is_exact() && fit.poly() == &disc,
        "determinant of multiplication by dF/dY",
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..3 {
        let c = random_weights(&mut rng, ctx.d());
        let g = monomial_substitute(f, &c)?;
        let projected = delta.project(&c.iter().map(|&x| x as u64).collect::<Vec<_>>())?;
        let direct = Polytope::newton(&discriminant_fv(&g)?)?;
        let cs = c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        checks.push(Check::new(format!("projection c=({cs})"), projected == direct, vertices_string(&direct)));
    }

    let report = test_polynomial(f)?;
    if let Some(h) = &inst.sequence {
        let got = report.char_exponents.clone().unwrap_or_default();
        checks.push(Check::new(
            "round-trip",
            report.is_irreducible() && &got == h,
            format!("{} recovered {}", report.verdict.as_str(), seq_string(&got)),
        ));
    }

    if let Some(file) = &inst.roots {
        let roots: Vec<FracSeries> = file.to_roots()?;
        let tree = build_tree(roots)?;
        let tp = tree.polytope()?;
        checks.push(Check::new("tree-polytope", tp == delta, vertices_string(&tp)));
        let perms = tree.star_permutations()?;
        let mut all = true;
        for bar in tree.bars() {
            all &= bar.conjugate_count()? == tree.orbit_size(bar, &perms) as u64;
        }
        checks.push(Check::new("conjugates-equal-orbits", all, format!("{} bars", tree.bars().len())));
        let tt = tree.tree_type()?;
        let pass = match (&tt, &inst.sequence) {
            (Some(t), Some(h)) => t == h,
            (Some(t), None) => report.char_exponents.as_ref() == Some(t),
            (None, _) => !report.is_irreducible(),
        };
        checks.push(Check::new("tree-type", pass, tt.as_deref().map(seq_string).unwrap_or_else(|| "none".into())));
    }
    Ok(checks)
}

/// Truncation used when `--trunc` is absent: twice one more than the degree of
/// the discriminant of the Weierstrass factor, itself prepared to the degree of `g`.
fn default_trunc(g: &MPoly<Rat>) -> Result<u32> {
    let deg = g.total_degree().unwrap_or(0);
    let w = weierstrass_preparation(&TruncSeries::exact(g.clone()), deg + 1)?;
    let disc = discriminant_fv(w.poly())?;
    Ok(2 * (1 + disc.total_degree().unwrap_or(0)))
}

/// `Δ(𝔇_g)` against `Δ(D_W)` for the Weierstrass factor `W` of `g`, both truncated.
fn unit_multiple_check(g: &MPoly<Rat>, prec: u32) -> Result<Check> {
    let fit = fitting_discriminant(&TruncSeries::exact(g.clone()), prec)?;
    let w = weierstrass_preparation(&TruncSeries::exact(g.clone()), prec)?;
    let dw = discriminant_fv(w.poly())?;
    let known = match (fit.trunc(), w.trunc()) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    let lhs = certified_polytope(&TruncSeries::with_trunc(fit.poly().clone(), known))?;
    let rhs = certified_vertices(&Polytope::newton(&dw)?, known);
    let pass = lhs.certified == rhs && !rhs.is_empty();
    let detail = format!(
        "certified below degree {}: {}",
        known.map(|k| k.to_string()).unwrap_or_else(|| "inf".into()),
        rhs.iter().map(|v| point_string(v)).collect::<Vec<_>>().join(" ")
    );
    Ok(Check::new("unit-invariance", pass, detail))
}

fn cmd_verify(cfg: &RunConfig, input: &str, out: &mut dyn Write) -> Result<i32> {
    let inst = read_instance(input)?;
    let g = parse_series(&inst.polynomial, cfg.d)?;
    let checks = if weierstrass_check(&g).is_ok() {
        weierstrass_checks(&g, &inst, cfg)?
    } else {
        let prec = match cfg.trunc {
            Some(n) => n,
            None => default_trunc(&g)?,
        };
        vec![unit_multiple_check(&g, prec)?]
    };
    let text: String =
        checks.iter().map(|c| format!("{} {}: {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail)).collect();
    let value = json!({
        "checks": checks.iter().map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail})).collect::<Vec<_>>(),
        "allPass": checks.iter().all(|c| c.pass),
    });
    emit(out, cfg, &text, value)?;
    Ok(if checks.iter().all(|c| c.pass) { 0 } else { 1 })
}

fn cmd_fitting(cfg: &RunConfig, input: &str, out: &mut dyn Write) -> Result<i32> {
    let inst = read_instance(input)?;
    let g = parse_series(&inst.polynomial, cfg.d)?;
    let prec = match cfg.trunc {
        Some(n) => n,
        None => default_trunc(&g)?,
    };
    let d = fitting_discriminant(&TruncSeries::exact(g), prec)?;
    let cp = certified_polytope(&d)?;
    let mut text = format!("fitting discriminant: {d}\n");
    match &cp.polytope {
        Some(p) => text.push_str(&format!("vertices: {}\n", vertices_string(p))),
        None => text.push_str("vertices: unknown\n"),
    }
    text.push_str(&format!(
        "certified: {}\nflagged: {}\n",
        cp.certified.iter().map(|v| point_string(v)).collect::<Vec<_>>().join(" "),
        if cp.flagged() { "yes" } else { "no" }
    ));
    let mut value = d.to_json();
    value["newton"] = cp.to_json();
    emit(out, cfg, &text, value)?;
    Ok(0)
}
