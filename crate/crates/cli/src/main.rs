//! `tropmat` — matroids, Bergman fans, and algebraic matroids of ideals on
//! the command line.
//!
//! Exit codes:
//!
//! * `0` — success (and "equal" / "balanced" for the comparison verbs);
//! * `1` — a definite negative answer: unequal, unbalanced, not a matroid;
//! * `2` — a parse or usage error in the input;
//! * `3` — a precondition violation: loops without `--simplify`, non-pure or
//!   non-simplicial fans, mismatched ground sets, monomial generators;
//! * `4` — inconclusive: the Gröbner budget ran out before a verdict.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tropmat_core::bergman::{bergman_fan, first_family_difference, realizability_witness_check};
use tropmat_core::fan::{
    balancing_weight_space, fan_independence_complex, is_balanced, WeightedFan,
};
use tropmat_core::groebner::{algebraic_matroid, Budget};
use tropmat_core::io::{self, rational_to_string};
use tropmat_core::matroid::{is_matroid, MatroidViolation};
use tropmat_core::{Error, Matroid, Rational, Subset};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

/// The largest ground set / variable count the exhaustive enumerations accept.
const MAX_GROUND_SET: usize = 24;

#[derive(Parser)]
#[command(
    name = "tropmat",
    version,
    about = "Matroids, Bergman fans, balancing, and algebraic matroids of polynomial ideals"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the parallel enumerations (0 = all cores).
    /// Output is identical for every thread count.
    #[arg(long, global = true, env = "TROPMAT_THREADS", value_name = "K")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect, validate, or generate matroids.
    #[command(subcommand)]
    Matroid(MatroidCmd),
    /// Write the Bergman fan of a loop-free matroid.
    Bergman(BergmanArgs),
    /// Query a weighted fan.
    #[command(subcommand)]
    Fan(FanCmd),
    /// Analyze a polynomial ideal.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Compare a matroid's independence data against a fan or an ideal.
    Compare(CompareArgs),
}

#[derive(Subcommand)]
enum MatroidCmd {
    /// Print n, rank, and the numbers of bases, flats, loops, and coloops.
    Info {
        /// Matroid file (JSON).
        file: PathBuf,
    },
    /// Check the basis-exchange axiom for the file's independence data.
    Check {
        /// Matroid file (JSON).
        file: PathBuf,
    },
    /// Emit a built-in matroid: `vamos`, or `uniform R N`.
    Builtin {
        /// Builtin name (`vamos` or `uniform`).
        name: String,
        /// Numeric parameters (`R N` for `uniform`).
        params: Vec<usize>,
        /// Write the matroid here instead of stdout.
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BergmanArgs {
    /// Matroid file (JSON).
    matroid: PathBuf,
    /// Output fan file (JSON).
    output: PathBuf,
    /// Delete loops (with a note) instead of refusing loopy input.
    #[arg(long)]
    simplify: bool,
}

#[derive(Subcommand)]
enum FanCmd {
    /// Maximal coordinate sets on which the fan's projection is full-dimensional.
    Indep {
        /// Fan file (JSON).
        file: PathBuf,
    },
    /// Check the balancing condition and report the balancing weight space.
    Balance {
        /// Fan file (JSON).
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum IdealCmd {
    /// Compute the algebraic matroid of the ideal's coordinates.
    Matroid {
        /// Ideal file (`vars n` header, one polynomial per line).
        file: PathBuf,
        /// Write the resulting matroid here (the report always goes to stdout).
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Args)]
struct CompareArgs {
    /// Matroid file (JSON).
    matroid: PathBuf,
    /// A fan file (JSON with a "cones" field) or an ideal file (`vars n` text).
    other: PathBuf,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct BudgetArgs {
    /// Abort a Gröbner run after this many S-pair reductions.
    #[arg(long, value_name = "N", default_value_t = 10_000)]
    max_pairs: usize,
    /// Abort a Gröbner run when a reduced remainder exceeds this total degree.
    #[arg(long = "max-deg", value_name = "D", default_value_t = 40)]
    max_deg: u32,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_pairs: self.max_pairs,
            max_degree: self.max_deg,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.unwrap_or(1);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .ok();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::Budget { .. } => EXIT_INCONCLUSIVE,
        _ => EXIT_PRECONDITION,
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let json = cli.json;
    match &cli.command {
        Command::Matroid(MatroidCmd::Info { file }) => cmd_matroid_info(file, json),
        Command::Matroid(MatroidCmd::Check { file }) => cmd_matroid_check(file, json),
        Command::Matroid(MatroidCmd::Builtin {
            name,
            params,
            output,
        }) => cmd_matroid_builtin(name, params, output.as_deref(), json),
        Command::Bergman(args) => cmd_bergman(args, json),
        Command::Fan(FanCmd::Indep { file }) => cmd_fan_indep(file, json),
        Command::Fan(FanCmd::Balance { file }) => cmd_fan_balance(file, json),
        Command::Ideal(IdealCmd::Matroid {
            file,
            output,
            budget,
        }) => cmd_ideal_matroid(file, output.as_deref(), budget.budget(), json),
        Command::Compare(args) => cmd_compare(args, json),
    }
}

// ---------------------------------------------------------------------------
// file and formatting helpers

fn read_file(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn read_matroid(path: &Path) -> Result<Matroid, Error> {
    io::matroid_from_json(&read_file(path)?)
}

fn read_fan(path: &Path) -> Result<WeightedFan, Error> {
    io::fan_from_json(&read_file(path)?)
}

fn vec_text(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(rational_to_string).collect();
    format!("({})", parts.join(","))
}

fn vecs_text(vs: &[Vec<Rational>]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| vec_text(v)).collect();
    format!("[{}]", parts.join(","))
}

fn vec_json(v: &[Rational]) -> Value {
    json!(v.iter().map(rational_to_string).collect::<Vec<String>>())
}

fn vecs_json(vs: &[Vec<Rational>]) -> Value {
    json!(vs.iter().map(|v| vec_json(v)).collect::<Vec<Value>>())
}

fn subset_json(s: Subset) -> Value {
    json!(s.elements())
}

fn subsets_json(ss: &[Subset]) -> Value {
    json!(ss.iter().map(|s| subset_json(*s)).collect::<Vec<Value>>())
}

fn violation_text(v: &MatroidViolation) -> String {
    match v {
        MatroidViolation::Empty => "family is empty".into(),
        MatroidViolation::Exchange { smaller, larger } => {
            format!("exchange fails for ({smaller}, {larger})")
        }
    }
}

fn violation_json(v: &MatroidViolation) -> Value {
    match v {
        MatroidViolation::Empty => json!({ "kind": "empty" }),
        MatroidViolation::Exchange { smaller, larger } => json!({
            "kind": "exchange",
            "smaller": subset_json(*smaller),
            "larger": subset_json(*larger),
        }),
    }
}

// ---------------------------------------------------------------------------
// matroid verbs

fn cmd_matroid_info(file: &Path, json: bool) -> Result<u8, Error> {
    let m = read_matroid(file)?;
    let flats = m.flats();
    let loops = m.loops();
    let coloops = m.coloops();
    if json {
        println!(
            "{:#}",
            json!({
                "n": m.n(),
                "rank": m.rank(),
                "bases": m.bases().len(),
                "flats": flats.len(),
                "loops": loops,
                "coloops": coloops,
            })
        );
    } else {
        println!(
            "n={} rank={} bases={} flats={} loops={} coloops={}",
            m.n(),
            m.rank(),
            m.bases().len(),
            flats.len(),
            loops.len(),
            coloops.len()
        );
    }
    Ok(EXIT_OK)
}

fn cmd_matroid_check(file: &Path, json: bool) -> Result<u8, Error> {
    let m = read_matroid(file)?;
    match is_matroid(&m.independence_complex()) {
        Ok(()) => {
            if json {
                println!(
                    "{:#}",
                    json!({ "is_matroid": true, "bases": m.bases().len() })
                );
            } else {
                println!("matroid: {} bases, exchange axiom holds", m.bases().len());
            }
            Ok(EXIT_OK)
        }
        Err(v) => {
            if json {
                println!(
                    "{:#}",
                    json!({ "is_matroid": false, "violation": violation_json(&v) })
                );
            } else {
                println!("not a matroid: {}", violation_text(&v));
            }
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_matroid_builtin(
    name: &str,
    params: &[usize],
    output: Option<&Path>,
    json: bool,
) -> Result<u8, Error> {
    let m = match (name, params) {
        ("vamos", []) => Matroid::vamos(),
        ("uniform", [r, n]) => Matroid::uniform(*r, *n)?,
        ("uniform", _) => {
            return Err(Error::Parse(
                "builtin 'uniform' takes exactly two parameters: R N".into(),
            ))
        }
        _ => {
            return Err(Error::Parse(format!(
                "unknown builtin '{name}' (available: vamos, uniform R N)"
            )))
        }
    };
    let text = io::matroid_to_json(&m);
    match output {
        Some(path) => {
            write_file(path, &text)?;
            if json {
                println!(
                    "{:#}",
                    json!({
                        "output": path.display().to_string(),
                        "n": m.n(),
                        "rank": m.rank(),
                        "bases": m.bases().len(),
                    })
                );
            } else {
                println!(
                    "wrote {}: n={} rank={} bases={}",
                    path.display(),
                    m.n(),
                    m.rank(),
                    m.bases().len()
                );
            }
        }
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// bergman

fn cmd_bergman(args: &BergmanArgs, json: bool) -> Result<u8, Error> {
    let mut m = read_matroid(&args.matroid)?;
    let mut removed: Vec<usize> = Vec::new();
    if args.simplify {
        let (simplified, loops) = m.simplify();
        m = simplified;
        removed = loops;
    }
    let bf = bergman_fan(&m)?;
    write_file(&args.output, &io::fan_to_json(&bf.fan))?;
    if json {
        println!(
            "{:#}",
            json!({
                "output": args.output.display().to_string(),
                "cones": bf.fan.cones().len(),
                "dimension": m.rank(),
                "removed_loops": removed,
            })
        );
    } else {
        if !removed.is_empty() {
            println!("removed loops: {removed:?}");
        }
        println!(
            "wrote {}: {} cones, dimension {}",
            args.output.display(),
            bf.fan.cones().len(),
            m.rank()
        );
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// fan verbs

fn cmd_fan_indep(file: &Path, json: bool) -> Result<u8, Error> {
    let f = read_fan(file)?;
    if f.n() > MAX_GROUND_SET {
        return Err(Error::InvalidInput(format!(
            "fan in {} coordinates exceeds the supported maximum {MAX_GROUND_SET}",
            f.n()
        )));
    }
    let family = fan_independence_complex(&f);
    if json {
        println!(
            "{:#}",
            json!({
                "n": family.n(),
                "maximal_members": subsets_json(family.maximal_members()),
            })
        );
    } else {
        let parts: Vec<String> = family
            .maximal_members()
            .iter()
            .map(|s| s.to_string())
            .collect();
        println!("{}", parts.join(" "));
    }
    Ok(EXIT_OK)
}

fn cmd_fan_balance(file: &Path, json: bool) -> Result<u8, Error> {
    let f = read_fan(file)?;
    let report = is_balanced(&f)?;
    if report.balanced {
        let ws = balancing_weight_space(&f)?;
        if json {
            println!(
                "{:#}",
                json!({
                    "balanced": true,
                    "weight_space_dim": ws.dimension,
                    "weight_space_basis": vecs_json(&ws.basis),
                })
            );
        } else {
            println!("balanced; weight space dim {}", ws.dimension);
        }
        Ok(EXIT_OK)
    } else {
        let v = report
            .violation
            .expect("unbalanced report carries a violation");
        if json {
            println!(
                "{:#}",
                json!({
                    "balanced": false,
                    "ridge": {
                        "rays": vecs_json(v.ridge.rays()),
                        "lineality": vecs_json(v.ridge.lineality()),
                    },
                    "residual": vec_json(&v.residual),
                })
            );
        } else {
            println!(
                "unbalanced at ridge rays={} lineality={}; residual={}",
                vecs_text(v.ridge.rays()),
                vecs_text(v.ridge.lineality()),
                vec_text(&v.residual)
            );
        }
        Ok(EXIT_NEGATIVE)
    }
}

// ---------------------------------------------------------------------------
// ideal verbs

fn cmd_ideal_matroid(
    file: &Path,
    output: Option<&Path>,
    budget: Budget,
    json: bool,
) -> Result<u8, Error> {
    let parsed = io::ideal_from_text(&read_file(file)?)?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    let p = parsed.ideal;
    if p.nvars() > MAX_GROUND_SET {
        return Err(Error::InvalidInput(format!(
            "ideal in {} variables exceeds the supported maximum {MAX_GROUND_SET}",
            p.nvars()
        )));
    }
    let report = algebraic_matroid(&p, budget);
    if !report.inconclusive.is_empty() {
        if json {
            println!(
                "{:#}",
                json!({
                    "inconclusive": subsets_json(&report.inconclusive),
                    "warnings": parsed.warnings,
                })
            );
        } else {
            println!(
                "inconclusive: {} subsets undecided within budget (first: {})",
                report.inconclusive.len(),
                report.inconclusive[0]
            );
        }
        return Ok(EXIT_INCONCLUSIVE);
    }
    if let Err(v) = is_matroid(&report.family) {
        if json {
            println!(
                "{:#}",
                json!({
                    "is_matroid": false,
                    "violation": violation_json(&v),
                    "warnings": parsed.warnings,
                })
            );
        } else {
            println!("family is not a matroid: {}", violation_text(&v));
        }
        return Ok(EXIT_NEGATIVE);
    }
    let m = Matroid::from_bases(p.nvars(), report.family.maximal_members().to_vec())?;
    let summary = format!(
        "n={} rank={} bases={} loops={}",
        m.n(),
        m.rank(),
        m.bases().len(),
        report.loops.len()
    );
    if let Some(path) = output {
        write_file(path, &io::matroid_to_json(&m))?;
        if json {
            println!(
                "{:#}",
                json!({
                    "output": path.display().to_string(),
                    "n": m.n(),
                    "rank": m.rank(),
                    "bases": subsets_json(m.bases()),
                    "loops": report.loops,
                    "warnings": parsed.warnings,
                })
            );
        } else {
            println!("wrote {}: {summary}", path.display());
        }
    } else if json {
        println!(
            "{:#}",
            json!({
                "n": m.n(),
                "rank": m.rank(),
                "bases": subsets_json(m.bases()),
                "loops": report.loops,
                "warnings": parsed.warnings,
            })
        );
    } else {
        println!("{summary}");
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// compare

enum OtherKind {
    Fan,
    IdealText,
}

fn sniff_other(text: &str) -> Result<OtherKind, Error> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let value: Value = serde_json::from_str(trimmed).map_err(|e| {
            Error::Parse(format!("second input is neither a fan nor an ideal: {e}"))
        })?;
        if value.get("cones").is_some() {
            Ok(OtherKind::Fan)
        } else {
            Err(Error::Parse(
                "second input is JSON without a \"cones\" field; expected a fan or an ideal".into(),
            ))
        }
    } else {
        Ok(OtherKind::IdealText)
    }
}

fn report_comparison(equal: bool, witness: Option<Subset>, json: bool) -> u8 {
    if equal {
        if json {
            println!("{:#}", json!({ "equal": true }));
        } else {
            println!("equal");
        }
        EXIT_OK
    } else {
        if json {
            println!(
                "{:#}",
                json!({
                    "equal": false,
                    "witness": witness.map(subset_json),
                })
            );
        } else {
            match witness {
                Some(w) => println!("unequal; witness {w}"),
                None => println!("unequal"),
            }
        }
        EXIT_NEGATIVE
    }
}

fn cmd_compare(args: &CompareArgs, json: bool) -> Result<u8, Error> {
    let m = read_matroid(&args.matroid)?;
    let other_text = read_file(&args.other)?;
    match sniff_other(&other_text)? {
        OtherKind::Fan => {
            let f = io::fan_from_json(&other_text)?;
            if f.n() != m.n() {
                return Err(Error::InvalidInput(format!(
                    "fan in {} coordinates compared against a matroid on {} elements",
                    f.n(),
                    m.n()
                )));
            }
            let fan_family = fan_independence_complex(&f);
            let matroid_family = m.independence_complex();
            let witness = first_family_difference(&fan_family, &matroid_family);
            Ok(report_comparison(witness.is_none(), witness, json))
        }
        OtherKind::IdealText => {
            let parsed = io::ideal_from_text(&other_text)?;
            for w in &parsed.warnings {
                eprintln!("warning: {w}");
            }
            let report = realizability_witness_check(&m, &parsed.ideal, args.budget.budget())?;
            if !report.inconclusive.is_empty() {
                if json {
                    println!(
                        "{:#}",
                        json!({ "inconclusive": subsets_json(&report.inconclusive) })
                    );
                } else {
                    println!(
                        "inconclusive: {} subsets undecided within budget (first: {})",
                        report.inconclusive.len(),
                        report.inconclusive[0]
                    );
                }
                return Ok(EXIT_INCONCLUSIVE);
            }
            Ok(report_comparison(report.matches, report.witness, json))
        }
    }
}
