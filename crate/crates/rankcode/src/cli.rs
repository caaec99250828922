//! Argument parsing and subcommand dispatch.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rankcode_core::construct::{
    example_2x4, example_3_6, field_spread_set_in, gabidulin, generalized_twisted, generalized_twisted_unchecked,
    gold_apn_code, gold_apn_code_unchecked, kernel_larger, self_dual_basis, smallest_nonsquare, zhou_pott,
};
use rankcode_core::dho::{check_d_axioms, check_dho_set, components, dho_invariants, knuth_dho, predicates};
use rankcode_core::duality::{delsarte_dual, knuth_orbit, opposite_exact, verify_six_relations};
use rankcode_core::gf::{make_field, norm_trace};
use rankcode_core::invariant::{kernel_translation, middle_nucleus, nuclei_spectrum, right_nucleus};
use rankcode_core::{DhoSet, FieldCtx, KnuthOp, Limits, QExtension, RankCode, Side};
use serde_json::{json, Map, Value};

use crate::codefile::{load_code, CodeFile};
use crate::error::{CliError, Result};
use crate::report::{self, Report};
use crate::suite;

#[derive(Debug, Parser)]
#[command(name = "rankcode", version, about = "Rank-metric codes: constructions, kernels, nuclei and duality")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Largest number of codewords, subspaces or elements enumerated.
    #[arg(long, global = true, default_value_t = Limits::default().max_enum)]
    pub max_enum: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Seed for sampled classification and randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output path for the code file or report.
    #[arg(short = 'o', long = "out", global = true)]
    pub out: Option<PathBuf>,
    /// Add wall-clock time to the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Field parameters, and norm and trace of an element.
    Field(FieldArgs),
    /// Build a code and write it as a code file.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Invariants of a code file.
    Analyze(AnalyzeArgs),
    /// Nuclei of all projections `L_U C` with `dim U = l`.
    Spectrum {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Middle)]
        side: SideArg,
        #[arg(long, value_delimiter = ',', required = true)]
        level: Vec<usize>,
    },
    /// Delsarte dual, adjoint or opposite of a code.
    Dual(DualArgs),
    /// The Knuth orbit, one member of it, or the six nuclei relations.
    Knuth {
        file: PathBuf,
        /// id, opp, top, opp-top, top-opp or top-opp-top.
        #[arg(long)]
        op: Option<KnuthOp>,
        #[arg(long)]
        verify_six: bool,
        /// Write the six orbit members here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Dimensional dual hyperovals.
    Dho {
        #[command(subcommand)]
        action: DhoAction,
    },
    /// Run a built-in verification suite.
    Verify {
        #[command(subcommand)]
        suite: SuiteArg,
    },
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    /// Modulus such as `x4-x3-1` or `x^2+x+2`.
    #[arg(long)]
    pub modulus: Option<String>,
    /// Element code.
    #[arg(long)]
    pub elem: Option<u32>,
    /// Degree over `F_p` of the subfield for norm and trace.
    #[arg(long, default_value_t = 1)]
    pub sub_degree: u32,
}

#[derive(Debug, Args)]
pub struct ExtArgs {
    #[arg(long)]
    pub p: u32,
    /// `q = p^e`.
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    /// Extension degree over `F_q`.
    #[arg(long)]
    pub n: u32,
    /// Modulus of `F_{q^n}` over `F_p`.
    #[arg(long)]
    pub big_modulus: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// `G_{k,s}`.
    Gabidulin {
        #[command(flatten)]
        ext: ExtArgs,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        s: u32,
    },
    /// `H_{k,s}(eta, h)`.
    GenTwisted {
        #[command(flatten)]
        ext: ExtArgs,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long, default_value_t = 0)]
        h: u32,
        /// Element code of `eta`.
        #[arg(long, conflicts_with = "eta_modulus")]
        eta: Option<u32>,
        /// Take `eta` as a root of this polynomial (it becomes the big modulus).
        #[arg(long)]
        eta_modulus: Option<String>,
        /// Skip the norm condition on `eta`.
        #[arg(long)]
        unchecked: bool,
    },
    /// `G_{k,s}` evaluated on `alphas` only.
    Rectangular {
        #[command(flatten)]
        ext: ExtArgs,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        alphas: Vec<u32>,
    },
    /// Multiplication maps of `F_{q^n}`.
    Spread {
        #[command(flatten)]
        ext: ExtArgs,
        /// Use the first self-dual basis instead of the polynomial basis.
        #[arg(long)]
        self_dual: bool,
    },
    /// `2n x 2n` commutative semifield code and its projection.
    ZhouPott {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Use `sigma: x -> x^{p^{n-1}}`.
        #[arg(long)]
        nontrivial_sigma: bool,
        /// Nonsquare `alpha` (default: smallest).
        #[arg(long)]
        alpha: Option<u32>,
        /// Emit the `n x 2n` projection instead.
        #[arg(long)]
        projection: bool,
    },
    /// Bilinear maps of the Gold function `x^{2^k+1}` over `F_{2^n}`.
    Gold {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        unchecked: bool,
    },
    /// The 2 x 4 binary MRD code with a non-field right nucleus.
    Example2x4,
    /// All matrices with zero last row and column.
    Example36 {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// `{a x + b x^{q^2}}` over `F_{q^4}`.
    KernelLarger {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub kernel: bool,
    #[arg(long)]
    pub middle: bool,
    #[arg(long)]
    pub right: bool,
    #[arg(long)]
    pub mrd: bool,
    #[arg(long)]
    pub weights: bool,
    #[arg(long)]
    pub covering: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SideArg {
    Middle,
    Right,
}

#[derive(Debug, Args)]
pub struct DualArgs {
    pub file: PathBuf,
    #[command(flatten)]
    pub kind: DualKind,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct DualKind {
    #[arg(long)]
    pub delsarte: bool,
    #[arg(long)]
    pub adjoint: bool,
    #[arg(long)]
    pub opposite: bool,
}

#[derive(Debug, Subcommand)]
pub enum DhoAction {
    /// The DHO-set of the Gold function, as a code file.
    Build {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Properties P1 and P2.
    Validate { file: PathBuf },
    /// Axioms D1 to D3 of the component collection.
    Axioms { file: PathBuf },
    /// Bilinear, symmetric, alternating, doubly dual.
    Predicates { file: PathBuf },
    /// Kernel and nuclei against the expected orders.
    Invariants { file: PathBuf },
    /// Knuth images of the set.
    Knuth {
        file: PathBuf,
        #[arg(long)]
        op: Option<KnuthOp>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SuiteArg {
    /// The twelve acceptance criteria.
    #[command(alias = "paper-suite")]
    Acceptance {
        /// Criterion number or a substring of its name.
        #[arg(long)]
        filter: Option<String>,
    },
}

/// What a subcommand produced.
struct Outcome {
    results: Value,
    /// A code file for `-o` (or stdout when there is no `-o`).
    code: Option<CodeFile>,
    failure: Option<String>,
}

impl Outcome {
    fn report(results: Value) -> Self {
        Outcome { results, code: None, failure: None }
    }

    fn code(code: &RankCode, meta: Value) -> Self {
        let meta = match meta {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        let file = CodeFile::from_code(code, meta);
        let results = json!({
            "m": code.m(),
            "n": code.n(),
            "q": code.field().order(),
            "linear": code.is_linear(),
            "dim": code.dim(),
            "cardinality": report::big(&code.cardinality()),
            "meta": file.meta,
        });
        Outcome { results, code: Some(file), failure: None }
    }
}

/// Parses `argv`, runs the command and prints the report; returns the exit
/// code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let err = CliError::usage(e.to_string().trim_end());
            eprintln!("{}", err.to_json());
            return err.exit_code();
        }
    };
    let command: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, command: Vec<String>) -> Result<i32> {
    let g = &cli.global;
    if let Some(w) = g.workers {
        if w == 0 {
            return Err(CliError::usage("--workers must be positive"));
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }
    let limits = Limits { max_enum: g.max_enum, seed: g.seed, ..Limits::default() };
    let start = Instant::now();
    let outcome = dispatch(&cli.command, &limits)?;
    let timing_ms = g.timing.then(|| start.elapsed().as_millis());
    let report = Report { command, limits, results: outcome.results, timing_ms };

    match (&outcome.code, &g.out) {
        (Some(file), Some(path)) => {
            file.write(path)?;
            println!("{}", report.render());
        }
        (Some(file), None) => println!("{}", file.to_json_string()),
        (None, Some(path)) => write_text(path, &report.render())?,
        (None, None) => println!("{}", report.render()),
    }
    match outcome.failure {
        Some(msg) => {
            let err = CliError::Verification(msg);
            eprintln!("{}", err.to_json());
            Ok(err.exit_code())
        }
        None => Ok(0),
    }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, format!("{text}\n")).map_err(|source| CliError::Io { path: path.into(), source })
}

/// Coefficients (constant first) of a polynomial such as `x4-x3-1`,
/// `x^4+2x^3+2` or `2*x+1`, reduced mod `p`.
pub fn parse_poly(s: &str, p: u32) -> Result<Vec<u32>> {
    let bad = || CliError::usage(format!("cannot read polynomial {s:?}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut coeffs: Vec<i64> = Vec::new();
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, t.strip_prefix('+').unwrap_or(&t)),
        };
        let (coef, deg) = match body.find(['x', 'X']) {
            None => (body.parse::<i64>().map_err(|_| bad())?, 0usize),
            Some(i) => {
                let c = body[..i].trim_end_matches('*');
                let c = if c.is_empty() { 1 } else { c.parse::<i64>().map_err(|_| bad())? };
                let d = body[i + 1..].trim_start_matches('^');
                let d = if d.is_empty() { 1 } else { d.parse::<usize>().map_err(|_| bad())? };
                (c, d)
            }
        };
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] += sign * coef;
    }
    Ok(coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u32).collect())
}

fn field_of(p: u32, e: u32, modulus: Option<&str>) -> Result<FieldCtx> {
    let m = modulus.map(|s| parse_poly(s, p)).transpose()?;
    Ok(make_field(p, e, m.as_deref())?)
}

fn ext_of(a: &ExtArgs, big_modulus: Option<&str>) -> Result<QExtension> {
    let small = make_field(a.p, a.e, None)?;
    let m = big_modulus.or(a.big_modulus.as_deref()).map(|s| parse_poly(s, a.p)).transpose()?;
    Ok(QExtension::new(&small, a.n, m.as_deref())?)
}

fn ext_meta(ext: &QExtension) -> Value {
    json!({ "q": ext.small().order(), "n": ext.n(), "big_modulus": ext.big().modulus() })
}

fn dispatch(cmd: &Command, limits: &Limits) -> Result<Outcome> {
    match cmd {
        Command::Field(a) => field_cmd(a),
        Command::Construct { family } => construct(family),
        Command::Analyze(a) => analyze(a, limits),
        Command::Spectrum { file, side, level } => {
            let code = load_code(file)?;
            let side = match side {
                SideArg::Middle => Side::Left,
                SideArg::Right => Side::Right,
            };
            let entries = nuclei_spectrum(&code, side, level, limits)?;
            Ok(Outcome::report(json!({
                "side": if side == Side::Left { "middle" } else { "right" },
                "spectrum": report::spectrum(&entries),
            })))
        }
        Command::Dual(a) => {
            let code = load_code(&a.file)?;
            let (kind, out) = if a.kind.delsarte {
                ("delsarte", delsarte_dual(&code)?)
            } else if a.kind.adjoint {
                ("adjoint", code.transpose())
            } else {
                ("opposite", opposite_exact(&code)?)
            };
            Ok(Outcome::code(&out, json!({ "construction": kind, "source": a.file.display().to_string() })))
        }
        Command::Knuth { file, op, verify_six, out_dir } => knuth(file, *op, *verify_six, out_dir.as_deref(), limits),
        Command::Dho { action } => dho(action, limits),
        Command::Verify { suite: SuiteArg::Acceptance { filter } } => verify(filter.as_deref(), limits),
    }
}

fn field_cmd(a: &FieldArgs) -> Result<Outcome> {
    let f = field_of(a.p, a.e, a.modulus.as_deref())?;
    let mut out = json!({
        "p": f.p(),
        "e": f.degree(),
        "order": f.order(),
        "modulus": f.modulus(),
        "generator": f.generator(),
    });
    if let Some(x) = a.elem {
        let el = f.elem(x)?;
        let (norm, trace) = norm_trace(&el, a.sub_degree)?;
        out["element"] = json!({
            "code": x,
            "coeffs": el.coeffs(),
            "inverse": f.inv(x),
            "is_square": f.is_square(x),
            "sub_degree": a.sub_degree,
            "norm": norm.code(),
            "trace": trace.code(),
        });
    }
    Ok(Outcome::report(out))
}

fn construct(family: &Family) -> Result<Outcome> {
    match family {
        Family::Gabidulin { ext, k, s } => {
            let e = ext_of(ext, None)?;
            let code = gabidulin(&e, *k, *s)?.into_code();
            Ok(Outcome::code(&code, json!({ "construction": "gabidulin", "k": k, "s": s, "field": ext_meta(&e) })))
        }
        Family::GenTwisted { ext, k, s, h, eta, eta_modulus, unchecked } => {
            let e = ext_of(ext, eta_modulus.as_deref())?;
            let eta = match (eta, eta_modulus) {
                (Some(x), _) => *x,
                (None, Some(_)) => e.big().generator(),
                (None, None) => return Err(CliError::usage("gen-twisted needs --eta or --eta-modulus")),
            };
            let code = if *unchecked {
                generalized_twisted_unchecked(&e, *k, *s, *h, eta)?
            } else {
                generalized_twisted(&e, *k, *s, *h, eta)?
            }
            .into_code();
            let meta = json!({
                "construction": "generalized-twisted",
                "k": k, "s": s, "h": h, "eta": eta, "norm_checked": !unchecked,
                "field": ext_meta(&e),
            });
            Ok(Outcome::code(&code, meta))
        }
        Family::Rectangular { ext, k, s, alphas } => {
            let e = ext_of(ext, None)?;
            let code = gabidulin(&e, *k, *s)?.rectangular(alphas)?;
            let meta = json!({ "construction": "rectangular", "k": k, "s": s, "alphas": alphas, "field": ext_meta(&e) });
            Ok(Outcome::code(&code, meta))
        }
        Family::Spread { ext, self_dual } => {
            let mut e = ext_of(ext, None)?;
            if *self_dual {
                let b = self_dual_basis(&e).ok_or_else(|| CliError::usage("this extension has no self-dual basis"))?;
                e = e.with_basis(&b)?;
            }
            let code = field_spread_set_in(&e)?;
            let meta = json!({ "construction": "field-spread-set", "basis": e.basis(), "field": ext_meta(&e) });
            Ok(Outcome::code(&code, meta))
        }
        Family::ZhouPott { p, n, k, nontrivial_sigma, alpha, projection } => {
            let big = make_field(*p, *n, None)?;
            let alpha = match alpha {
                Some(a) => *a,
                None => smallest_nonsquare(&big).ok_or_else(|| CliError::usage("p must be odd"))?,
            };
            let zp = zhou_pott(*p, *n, *k, !nontrivial_sigma, alpha)?;
            let code = if *projection { zp.projection()? } else { zp.code };
            let meta = json!({
                "construction": if *projection { "zhou-pott-projection" } else { "zhou-pott" },
                "p": p, "n": n, "k": k, "alpha": alpha,
                "sigma": if *nontrivial_sigma { "x^(p^(n-1))" } else { "identity" },
            });
            Ok(Outcome::code(&code, meta))
        }
        Family::Gold { n, k, unchecked } => {
            let code = if *unchecked { gold_apn_code_unchecked(*n, *k)? } else { gold_apn_code(*n, *k)? };
            Ok(Outcome::code(&code, json!({ "construction": "gold", "n": n, "k": k })))
        }
        Family::Example2x4 => Ok(Outcome::code(&example_2x4(), json!({ "construction": "example-2x4" }))),
        Family::Example36 { p, e, m, n } => {
            let f = make_field(*p, *e, None)?;
            let code = example_3_6(&f, *m, *n)?;
            Ok(Outcome::code(&code, json!({ "construction": "zero-last-row-and-column", "m": m, "n": n })))
        }
        Family::KernelLarger { p, e } => {
            let f = make_field(*p, *e, None)?;
            let code = kernel_larger(&f)?.into_code();
            Ok(Outcome::code(&code, json!({ "construction": "kernel-larger", "q": f.order() })))
        }
    }
}

fn analyze(a: &AnalyzeArgs, limits: &Limits) -> Result<Outcome> {
    let code = load_code(&a.file)?;
    let all = !(a.kernel || a.middle || a.right || a.mrd || a.weights || a.covering);
    let mut out = Map::new();
    out.insert("m".into(), json!(code.m()));
    out.insert("n".into(), json!(code.n()));
    out.insert("q".into(), json!(code.field().order()));
    out.insert("dim".into(), json!(code.dim()));
    if all || a.mrd {
        out.insert("mrd".into(), report::mrd(&code.is_mrd(limits)?));
    }
    if a.weights {
        out.insert("weights".into(), report::weights(&code.weight_distribution(limits)?));
    }
    if all || a.kernel {
        out.insert("kernel".into(), report::algebra(&kernel_translation(&code, limits)?));
    }
    if all || a.middle {
        out.insert("middle_nucleus".into(), report::algebra(&middle_nucleus(&code, limits)?));
    }
    if all || a.right {
        out.insert("right_nucleus".into(), report::algebra(&right_nucleus(&code, limits)?));
    }
    if a.covering {
        out.insert("covering".into(), json!(code.covering_property(limits)?));
    }
    Ok(Outcome::report(Value::Object(out)))
}

fn knuth(file: &Path, op: Option<KnuthOp>, verify_six: bool, out_dir: Option<&Path>, limits: &Limits) -> Result<Outcome> {
    let code = load_code(file)?;
    if let Some(op) = op {
        if verify_six || out_dir.is_some() {
            return Err(CliError::usage("--op cannot be combined with --verify-six or --out-dir"));
        }
        let image = op.apply(&code)?;
        return Ok(Outcome::code(&image, json!({ "construction": format!("knuth-{op}"), "source": file.display().to_string() })));
    }
    let orbit = knuth_orbit(&code)?;
    let mut out = json!({
        "distinct": orbit.distinct(),
        "classes": orbit.entries.iter().zip(&orbit.classes)
            .map(|((op, _), &c)| (op.name().to_string(), json!(orbit.entries[c].0.name())))
            .collect::<Map<_, _>>(),
    });
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.into(), source })?;
        let mut files = Vec::new();
        for (op, c) in &orbit.entries {
            let path = dir.join(format!("{}.json", op.name()));
            let meta = json!({ "construction": format!("knuth-{op}"), "source": file.display().to_string() });
            let Value::Object(meta) = meta else { unreachable!() };
            CodeFile::from_code(c, meta).write(&path)?;
            files.push(path.display().to_string());
        }
        out["files"] = json!(files);
    }
    if verify_six {
        out["six_relations"] = report::six_relations(&verify_six_relations(&code, limits)?);
    }
    Ok(Outcome::report(out))
}

fn load_dho(file: &Path) -> Result<DhoSet> {
    Ok(DhoSet::from_code(&load_code(file)?)?)
}

fn dho(action: &DhoAction, limits: &Limits) -> Result<Outcome> {
    let out = match action {
        DhoAction::Build { n, k } => {
            let d = rankcode_core::dho::gold_dho_set(*n, *k)?;
            return Ok(Outcome::code(&d.to_code()?, json!({ "construction": "gold-dho-set", "n": n, "k": k })));
        }
        DhoAction::Validate { file } => {
            let c = check_dho_set(&load_dho(file)?, limits)?;
            json!({ "valid": c.valid(), "check": report::dho_check(&c) })
        }
        DhoAction::Axioms { file } => {
            let a = check_d_axioms(&components(&load_dho(file)?), limits)?;
            json!({ "valid": a.valid(), "axioms": report::d_axioms(&a) })
        }
        DhoAction::Predicates { file } => report::predicates(&predicates(&load_dho(file)?, limits)?),
        DhoAction::Invariants { file } => report::dho_invariants(&dho_invariants(&load_dho(file)?, limits)?),
        DhoAction::Knuth { file, op } => {
            let d = load_dho(file)?;
            let ops: Vec<KnuthOp> = op.map_or(KnuthOp::ALL.to_vec(), |o| vec![o]);
            let mut m = Map::new();
            for o in ops {
                m.insert(o.name().into(), report::knuth_dho(&knuth_dho(&d, o, limits)?));
            }
            Value::Object(m)
        }
    };
    Ok(Outcome::report(out))
}

fn verify(filter: Option<&str>, limits: &Limits) -> Result<Outcome> {
    let ids = suite::select(filter);
    if ids.is_empty() {
        return Err(CliError::usage(format!("no criterion matches {:?}", filter.unwrap_or(""))));
    }
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    for id in ids {
        let c = suite::run(id, limits);
        eprintln!("{}", c.line());
        if !c.passed {
            failed.push(c.name);
        }
        rows.push(json!({ "id": c.id, "name": c.name, "passed": c.passed, "details": c.details }));
    }
    let results = json!({ "criteria": rows, "passed": failed.is_empty(), "failed": failed });
    let failure = (!failed.is_empty()).then(|| format!("failed criteria: {}", failed.join(", ")));
    Ok(Outcome { results, code: None, failure })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials() {
        assert_eq!(parse_poly("x4-x3-1", 3).unwrap(), vec![2, 0, 0, 2, 1]);
        assert_eq!(parse_poly("x^2 + x + 2", 3).unwrap(), vec![2, 1, 1]);
        assert_eq!(parse_poly("2*x+1", 5).unwrap(), vec![1, 2]);
        assert!(parse_poly("x^a", 2).is_err());
        assert!(parse_poly("", 2).is_err());
    }

    #[test]
    fn parses_knuth_ops_and_aliases() {
        let cli = Cli::try_parse_from(["rankcode", "knuth", "c.json", "--op", "opp-top"]).unwrap();
        assert!(matches!(cli.command, Command::Knuth { op: Some(KnuthOp::OppTop), .. }));
        let cli = Cli::try_parse_from(["rankcode", "verify", "paper-suite", "--filter", "3"]).unwrap();
        assert!(matches!(cli.command, Command::Verify { .. }));
        assert!(Cli::try_parse_from(["rankcode", "dual", "c.json"]).is_err());
    }
}
