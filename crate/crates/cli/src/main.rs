mod suites;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use gghlab::dirac::{dirac_cohomology, dirac_cohomology_blockwise, DcRecord};
use gghlab::group::compositions;
use gghlab::langlands::{is_tempered, langlands_data, RootFrame};
use gghlab::report::{CheckReport, Status};
use gghlab::reps::{block_label, parabolic_induce, restrict_to_weight, validate_module, HModule};
use gghlab::scalar::parse_rational;
use gghlab::{algebra::ASSOC_SEED, Error};

#[derive(Parser)]
#[command(name = "gghlab", version, about = "Exact checks for Dunkl-Opdam subalgebras of G(m,1,n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a JSON report
    Verify(VerifyArgs),
    /// Build, validate and analyse module files
    #[command(subcommand)]
    Module(ModuleCommand),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    /// Comma-separated suites; all of them when omitted
    #[arg(long, value_delimiter = ',', value_parser = clap::builder::PossibleValuesParser::new(suites::SUITES))]
    suite: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = "GGHLAB_THREADS")]
    threads: Option<usize>,
    #[arg(long, default_value_t = ASSOC_SEED)]
    seed: u64,
    /// Also run the deliberate-corruption checks
    #[arg(long)]
    negative_controls: bool,
    /// Refuse when m^n n! 2^n exceeds this
    #[arg(long, default_value_t = 1_000_000)]
    budget: u128,
    /// Record wall-clock time in the report (breaks byte-identical output)
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct InputArgs {
    /// Module file
    #[arg(value_name = "FILE")]
    file: Option<PathBuf>,
    #[arg(long, conflicts_with = "file")]
    input: Option<PathBuf>,
    /// kappa for module files that do not record one
    #[arg(long)]
    kappa: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ModuleCommand {
    /// Check every defining relation on a module file
    Validate(InputArgs),
    /// Induce a parabolic module to the full algebra
    Induce {
        #[command(flatten)]
        io: InputArgs,
        /// The block composition a; the input must then be a stab(mu_a)-module
        #[arg(long, value_delimiter = ',')]
        composition: Option<Vec<usize>>,
    },
    /// The mu_a weight space as a stab(mu_a)-module
    Restrict {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        composition: Vec<usize>,
    },
    /// Dirac cohomology, with the block comparison when a composition is given
    DiracCohomology {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, value_delimiter = ',')]
        composition: Option<Vec<usize>>,
    },
    /// Block label, temperedness and Langlands datum of an irreducible module
    Classify {
        #[command(flatten)]
        io: InputArgs,
        /// Use the opposite sign convention for the simple coroots
        #[arg(long)]
        flipped: bool,
    },
    /// List the compositions of n into m parts
    Blocks {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    /// exit 1
    Check(String),
    /// exit 2
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Relation { .. } | Error::NotIrreducible(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<bool, Failure>;

fn emit(value: &Value, out: Option<&Path>) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serialisable") + "\n";
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_json(r: &CheckReport, suite: &str) -> Vec<Value> {
    r.entries
        .iter()
        .map(|e| {
            let mut v = json!({ "suite": suite, "check": e.check, "status": e.status });
            if let Some(w) = &e.witness {
                let key = if e.status == Status::Info { "note" } else { "witness" };
                v[key] = json!(w);
            }
            v
        })
        .collect()
}

fn summary(checks: &[Value]) -> Value {
    let count = |s: Status| {
        let s = serde_json::to_value(s).expect("status");
        checks.iter().filter(|c| c["status"] == s).count()
    };
    json!({ "pass": count(Status::Pass), "fail": count(Status::Fail), "info": count(Status::Info) })
}

fn verify(args: VerifyArgs) -> Outcome {
    let (m, n) = (args.m, args.n);
    if m == 0 || n == 0 {
        return Err(Failure::Usage("m and n must be positive".into()));
    }
    let size = suites::working_set(m, n);
    if size > args.budget {
        return Err(Failure::Usage(format!(
            "m^n n! 2^n = {size} exceeds the budget {}; pass --budget to raise it",
            args.budget
        )));
    }
    let chosen: Vec<String> = if args.suite.is_empty() {
        suites::SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        args.suite.clone()
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = args.threads {
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| Failure::Usage(e.to_string()))?;
    let start = Instant::now();
    let results: Vec<(String, gghlab::Result<CheckReport>)> = pool.install(|| {
        let mut work: Vec<&str> = chosen.iter().map(String::as_str).collect();
        if args.negative_controls {
            work.push("negative-controls");
        }
        work.par_iter()
            .map(|&s| {
                let r = if s == "negative-controls" {
                    suites::negative_controls(m, n, args.seed)
                } else {
                    suites::run(s, m, n, args.seed)
                };
                (s.to_string(), r)
            })
            .collect()
    });
    let mut checks = Vec::new();
    for (suite, r) in results {
        checks.extend(report_json(&r?, &suite));
    }
    let all_pass = checks.iter().all(|c| c["status"] != json!("fail"));
    let mut report = json!({
        "tool": "gghlab",
        "version": env!("CARGO_PKG_VERSION"),
        "parameters": {
            "m": m,
            "n": n,
            "suites": chosen,
            "seed": args.seed,
            "negative_controls": args.negative_controls,
        },
        "summary": summary(&checks),
        "checks": checks,
    });
    if args.timing {
        report["timing_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    emit(&report, args.out.as_deref())?;
    Ok(all_pass)
}

fn load(io: &InputArgs) -> std::result::Result<HModule, Failure> {
    let path = io
        .file
        .as_ref()
        .or(io.input.as_ref())
        .ok_or_else(|| Failure::Usage("no input module given".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let mut v: Value =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if let (Some(k), Some(obj)) = (&io.kappa, v.as_object_mut()) {
        parse_rational(k)?;
        obj.entry("kappa").or_insert_with(|| json!(k));
    }
    HModule::from_json(&v).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn composition_roots(a: &[usize], x: &HModule) -> std::result::Result<(), Failure> {
    if a.len() != x.m() || a.iter().sum::<usize>() != x.n() {
        return Err(Failure::Usage(format!("{a:?} is not a composition of {} into {} parts", x.n(), x.m())));
    }
    Ok(())
}

fn module(cmd: ModuleCommand) -> Outcome {
    match cmd {
        ModuleCommand::Validate(io) => {
            let x = load(&io)?;
            let r = validate_module(&x);
            let checks = report_json(&r, "module");
            emit(
                &json!({ "m": x.m(), "n": x.n(), "dim": x.dim(), "summary": summary(&checks), "checks": checks }),
                io.out.as_deref(),
            )?;
            Ok(r.all_pass())
        }
        ModuleCommand::Induce { io, composition } => {
            let u = load(&io)?;
            if let Some(a) = &composition {
                composition_roots(a, &u)?;
                let want = gghlab::group::simple_roots_of(a);
                if u.roots() != want {
                    return Err(Failure::Usage(format!(
                        "the input acts through the simple roots {:?}, but stab(mu_a) has {want:?}",
                        u.roots()
                    )));
                }
            }
            emit(&parabolic_induce(&u)?.to_json(), io.out.as_deref())?;
            Ok(true)
        }
        ModuleCommand::Restrict { io, composition } => {
            let x = load(&io)?;
            composition_roots(&composition, &x)?;
            emit(&restrict_to_weight(&x, &composition)?.to_json(), io.out.as_deref())?;
            Ok(true)
        }
        ModuleCommand::DiracCohomology { io, composition } => {
            let x = load(&io)?;
            let dc = dirac_cohomology(&x)?;
            let record = DcRecord::new(&dc, x.kappa(), block_label(&x).ok());
            let mut v = serde_json::to_value(&record).expect("serialisable");
            let mut ok = true;
            if let Some(a) = &composition {
                composition_roots(a, &x)?;
                let b = dirac_cohomology_blockwise(&x, a, None)?;
                ok = b.pass();
                v["blockwise"] = serde_json::to_value(&b).expect("serialisable");
            }
            emit(&v, io.out.as_deref())?;
            Ok(ok)
        }
        ModuleCommand::Classify { io, flipped } => {
            let x = load(&io)?;
            let frame = RootFrame::with_convention(x.n(), flipped);
            let block = block_label(&x)?;
            let tempered = is_tempered(&x, &frame)?;
            let datum = langlands_data(&x, &frame)?;
            let factor = datum.tempered_factor().to_json();
            let factor_ref = match &io.out {
                Some(out) => {
                    let p = out.with_extension("tempered.json");
                    emit(&factor, Some(&p))?;
                    json!(p.file_name().map(|f| f.to_string_lossy().into_owned()))
                }
                None => factor,
            };
            let v = json!({
                "block": block,
                "P": datum.parabolic,
                "nu": datum.nu.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                "tempered": tempered,
                "tempered_factor": factor_ref,
                "verified_unique": datum.verified_unique,
            });
            emit(&v, io.out.as_deref())?;
            Ok(datum.verified_unique)
        }
        ModuleCommand::Blocks { m, n, out } => {
            if m == 0 || n == 0 {
                return Err(Failure::Usage("m and n must be positive".into()));
            }
            let list = compositions(n, m);
            emit(&json!({ "m": m, "n": n, "count": list.len(), "compositions": list }), out.as_deref())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Module(cmd) => module(cmd),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("gghlab: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("gghlab: {msg}");
            ExitCode::from(2)
        }
    }
}
