//! `forge`: plan, build, search and verify 3-SCHGDDs and the codes and sampling plans built
//! from them.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use forge_core::apps::bsec::build_bsec2;
use forge_core::apps::ooc::{build_ooc_nm, fold_ooc, OocCode};
use forge_core::direct::{direct_family, quasi_skew_starter, FamilyId};
use forge_core::recursive::{annotate_cache, execute_plan, plan, ExecContext, Status};
use forge_core::search::{confirm_nonexistence_5_1_4, search, search_ooc, Budget, Cache, Outcome, SearchProblem};
use forge_core::verify::{johnson_bound, verify_ooc};
use forge_core::{verify, Design, DesignParams, ForgeError, VerificationReport};
use serde_json::{json, Value};

const OK: u8 = 0;
const INVALID: u8 = 1;
const USAGE: u8 = 2;
const UNSETTLED: u8 = 3;

#[derive(Parser)]
#[command(name = "forge", version, about = "Constructions and verifiers for 3-SCHGDDs")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct Common {
    /// Write the produced object as JSON to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Machine-readable output on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Search node budget per ingredient.
    #[arg(long, global = true, default_value_t = 20_000_000)]
    budget: u64,
    /// Worker threads for verification and execution (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// A design or code JSON file used in place of searching for it.
    #[arg(long = "ingredient", global = true)]
    ingredients: Vec<PathBuf>,
    /// Ingredient cache directory; overrides FORGE_CACHE_DIR.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Schgdd,
    Scgdd,
    StrictGdd,
    Mgdd,
    Pdf,
    Pbd,
    Bsec1,
    CyclicBsec1,
    Ooc,
}

#[derive(Subcommand)]
enum Verb {
    /// Show the construction tree for an SCHGDD (n, m^t).
    Plan { n: u32, m: u32, t: u32 },
    /// Build an SCHGDD (n, m^t) by executing its plan.
    Build {
        #[arg(value_enum)]
        kind: BuildKind,
        n: u32,
        m: u32,
        t: u32,
    },
    /// Verify a design or code JSON file.
    Verify { file: PathBuf },
    /// Search for an object directly. Parameters by kind: schgdd n m t; scgdd n g [sizes..];
    /// strict-gdd groups size [sizes..]; mgdd n k; pdf v [sizes..]; pbd v [sizes..];
    /// bsec1 v; cyclic-bsec1 v; ooc n m.
    Search {
        #[arg(value_enum)]
        kind: Kind,
        params: Vec<u32>,
    },
    /// Build from a tabulated direct family.
    Direct { family: String, n: u32, m: u32, t: u32 },
    /// Quasi-skew starter in Z_n.
    Starter { n: u32 },
    /// Semi-cyclic 2-BSEC(n,m,3,1).
    Bsec { n: u32, m: u32 },
    /// Optimal 2-D (n x m,3,1)-OOC.
    Ooc { n: u32, m: u32 },
    /// Fold an OOC JSON file from n x m to (n*m1) x (m/m1).
    OocFold { file: PathBuf, m1: u32 },
    /// Johnson bound J(n x m, k, lambda).
    Bound { n: u64, m: u64, k: u64, lambda: u64 },
    /// Exhaustive check that no SCHGDD (5, 1^4) exists.
    #[command(name = "nonexist-5-1-4")]
    Nonexist514,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildKind {
    Schgdd,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<ForgeError> for Failure {
    fn from(e: ForgeError) -> Self {
        let code = match &e {
            ForgeError::Verification { .. } | ForgeError::Collision(_) => INVALID,
            ForgeError::InvalidParams(_)
            | ForgeError::NotApplicable { .. }
            | ForgeError::Parse(_)
            | ForgeError::Io(_)
            | ForgeError::Json(_) => USAGE,
            ForgeError::NotFound(_)
            | ForgeError::BudgetExhausted(_)
            | ForgeError::ExternalRequired(_)
            | ForgeError::NotConstructible(_) => UNSETTLED,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: USAGE, message: msg.into() }
}

type Run = Result<u8, Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if cli.common.json {
                println!("{}", json!({ "error": f.message, "exit": f.code }));
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn context(c: &Common) -> Result<ExecContext, Failure> {
    let mut ctx = ExecContext::with_budget(Budget::nodes(c.budget));
    ctx.cache = match &c.cache_dir {
        Some(d) => Some(Cache::open(d)?),
        None => Cache::from_env()?,
    };
    for path in &c.ingredients {
        let text = read(path)?;
        let value: Value = serde_json::from_str(&text).map_err(ForgeError::from)?;
        if value.get("codewords").is_some() {
            let code = OocCode::from_json(&text)?;
            let rep = verify_ooc(&code);
            if !rep.valid {
                return Err(ForgeError::Verification { what: format!("ingredient {}", path.display()), detail: rep.summary() }.into());
            }
            ctx.codes.insert(code.key(), code);
        } else {
            ctx.add_ingredient(Design::from_json(&text)?)?;
        }
    }
    Ok(ctx)
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_out(c: &Common, text: &str) -> Result<(), Failure> {
    if let Some(p) = &c.out {
        fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn emit_design(c: &Common, d: &Design) -> Run {
    let text = d.to_json()?;
    write_out(c, &text)?;
    if c.json {
        println!("{text}");
    } else {
        println!("{}: {} base blocks, via {}", d.params, d.base_blocks.len(), d.provenance);
        if c.out.is_none() {
            for b in &d.base_blocks {
                println!("  {b}");
            }
        }
    }
    Ok(OK)
}

fn emit_code(c: &Common, code: &OocCode) -> Run {
    let text = code.to_json()?;
    write_out(c, &text)?;
    if c.json {
        println!("{text}");
    } else {
        let bound = johnson_bound(code.n as u64, code.m as u64, code.k as u64, code.lambda as u64);
        println!(
            "({}x{},{},{})-OOC: {} codewords, Johnson bound {}",
            code.n,
            code.m,
            code.k,
            code.lambda,
            code.codewords.len(),
            bound.map_or("-".into(), |b| b.to_string())
        );
        if c.out.is_none() {
            for w in &code.codewords {
                let cells: Vec<String> = w.iter().map(|(r, c)| format!("({r},{c})")).collect();
                println!("  {{{}}}", cells.join(","));
            }
        }
    }
    Ok(OK)
}

fn emit_report(c: &Common, what: &str, rep: &VerificationReport) -> Run {
    if c.json {
        println!("{}", serde_json::to_string_pretty(rep).map_err(ForgeError::from)?);
    } else {
        println!("{what}: {}", rep.summary());
        for v in rep.violations.iter().skip(1).take(9) {
            println!("  {} {}", v.category, v.witness);
        }
    }
    Ok(if rep.valid { OK } else { INVALID })
}

fn search_params(kind: Kind, p: &[u32]) -> Result<DesignParams, Failure> {
    let need = |k: usize| if p.len() < k { Err(usage(format!("expected at least {k} parameters"))) } else { Ok(()) };
    let sizes = |from: usize| if p.len() > from { p[from..].to_vec() } else { vec![3] };
    Ok(match kind {
        Kind::Schgdd => {
            need(3)?;
            DesignParams::schgdd(p[0], p[1], p[2])
        }
        Kind::Scgdd => {
            need(2)?;
            DesignParams::scgdd(p[0], p[1], sizes(2))
        }
        Kind::StrictGdd => {
            need(2)?;
            DesignParams::strict_gdd(p[0], p[1], sizes(2))
        }
        Kind::Mgdd => {
            need(2)?;
            DesignParams::mgdd(p[0], p[1])
        }
        Kind::Pdf => {
            need(1)?;
            DesignParams::pdf(p[0], sizes(1))
        }
        Kind::Pbd => {
            need(1)?;
            DesignParams::pbd(p[0], sizes(1))
        }
        Kind::Bsec1 => {
            need(1)?;
            DesignParams::bsec1(p[0])
        }
        Kind::CyclicBsec1 => {
            need(1)?;
            DesignParams::cyclic_bsec1(p[0])
        }
        Kind::Ooc => unreachable!("codes are searched separately"),
    })
}

fn unsettled(c: &Common, what: &str, nodes: u64) -> Run {
    if c.json {
        println!("{}", json!({ "outcome": what, "nodes": nodes }));
    } else {
        println!("{what} after {nodes} nodes");
    }
    Ok(UNSETTLED)
}

fn run(cli: &Cli) -> Run {
    let c = &cli.common;
    match &cli.verb {
        Verb::Plan { n, m, t } => {
            let mut p = plan(*n, *m, *t);
            let ctx = context(c)?;
            if let Some(cache) = &ctx.cache {
                annotate_cache(&mut p, cache);
            }
            let text = serde_json::to_string_pretty(&p).map_err(ForgeError::from)?;
            write_out(c, &text)?;
            if c.json {
                println!("{text}");
            } else {
                print!("{}", p.render());
            }
            Ok(if matches!(p.status, Status::Exists) { OK } else { UNSETTLED })
        }
        Verb::Build { kind: BuildKind::Schgdd, n, m, t } => {
            let ctx = context(c)?;
            let d = execute_plan(&plan(*n, *m, *t), &ctx)?;
            emit_design(c, &d)
        }
        Verb::Verify { file } => {
            let text = read(file)?;
            let value: Value = serde_json::from_str(&text).map_err(ForgeError::from)?;
            if value.get("codewords").is_some() {
                let code = OocCode::from_json(&text)?;
                emit_report(c, &code.key(), &verify_ooc(&code))
            } else {
                let d = Design::from_json(&text)?;
                emit_report(c, &d.params.to_string(), &verify(&d))
            }
        }
        Verb::Search { kind: Kind::Ooc, params } => {
            let [n, m] = params[..] else { return Err(usage("ooc search takes n m")) };
            let res = search_ooc(n, m, Budget::nodes(c.budget))?;
            match res.outcome {
                Outcome::Found(code) => emit_code(c, &code),
                Outcome::NotFound => unsettled(c, "not found", res.nodes),
                Outcome::BudgetExhausted => unsettled(c, "budget exhausted", res.nodes),
            }
        }
        Verb::Search { kind, params } => {
            let target = search_params(*kind, params)?;
            let res = search(&SearchProblem::new(target, Budget::nodes(c.budget)))?;
            match res.outcome {
                Outcome::Found(d) => {
                    if let Some(cache) = &context(c)?.cache {
                        cache.put(&d)?;
                    }
                    emit_design(c, &d)
                }
                Outcome::NotFound => unsettled(c, "not found", res.nodes),
                Outcome::BudgetExhausted => unsettled(c, "budget exhausted", res.nodes),
            }
        }
        Verb::Direct { family, n, m, t } => {
            let id = FamilyId::parse(family).ok_or_else(|| {
                let names: Vec<&str> = FamilyId::ALL.iter().map(|f| f.name()).collect();
                usage(format!("unknown family {family}; one of {}", names.join(", ")))
            })?;
            emit_design(c, &direct_family(id, *n, *m, *t)?)
        }
        Verb::Starter { n } => {
            let s = quasi_skew_starter(*n)?;
            let text = serde_json::to_string_pretty(&s).map_err(ForgeError::from)?;
            write_out(c, &text)?;
            if c.json {
                println!("{text}");
            } else {
                let pairs: Vec<String> = s.pairs.iter().map(|(x, y)| format!("{{{x},{y}}}")).collect();
                println!("quasi-skew starter in Z_{} ({:?}): {}", s.n, s.origin, pairs.join(" "));
            }
            Ok(OK)
        }
        Verb::Bsec { n, m } => emit_design(c, &build_bsec2(*n, *m, &context(c)?)?),
        Verb::Ooc { n, m } => emit_code(c, &build_ooc_nm(*n, *m, &context(c)?)?),
        Verb::OocFold { file, m1 } => {
            let code = OocCode::from_json(&read(file)?)?;
            emit_code(c, &fold_ooc(&code, *m1)?)
        }
        Verb::Bound { n, m, k, lambda } => {
            let b = johnson_bound(*n, *m, *k, *lambda).ok_or_else(|| usage("the bound needs 1 <= lambda < k"))?;
            if c.json {
                println!("{}", json!({ "n": n, "m": m, "k": k, "lambda": lambda, "bound": b }));
            } else {
                println!("{b}");
            }
            Ok(OK)
        }
        Verb::Nonexist514 => {
            let cert = confirm_nonexistence_5_1_4();
            let text = serde_json::to_string_pretty(&cert).map_err(ForgeError::from)?;
            write_out(c, &text)?;
            if c.json {
                println!("{text}");
            } else {
                println!(
                    "SCHGDD (5,1^4): {} solutions in a space of {} assignments ({} nodes)",
                    cert.solutions, cert.space, cert.nodes
                );
            }
            Ok(if cert.solutions == 0 { OK } else { INVALID })
        }
    }
}
