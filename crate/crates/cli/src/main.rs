//! `m22`: command-line front end for the m22-core library.
//!
//! Exit codes: 0 pass, 1 fail, 2 usage or schema error, 3 step budget exhausted.
//! Any file argument of the form `@name` reads the bundled fixture `name`.

mod fixtures;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use m22_core::canonical::{describe, extract_with_precision, FamilySpec, DEFAULT_PRECISION};
use m22_core::catalog::{decision_path, CurveDescription};
use m22_core::chambers::{cone_contains, is_semistable, unstable_loci, Chamber, Character, LocusName};
use m22_core::groebner::DEFAULT_BUDGET;
use m22_core::moduli::{build_curve_ideal, curve_groebner_basis, minors_rank_ok, ModuliPoint};
use m22_core::singularity::{germ_catalog, invariants};
use m22_core::special::{run_check, Check, CHECK_NAMES};
use m22_core::Error;

#[derive(Parser, Debug)]
#[command(name = "m22", version, about = "Exact computations on a moduli space of 2-pointed genus-2 curves")]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Stability of a moduli point, a curve description or a family
    Classify(ClassifyArgs),
    /// Equations of the curve over a moduli point
    CurveEq {
        #[arg(long)]
        point: String,
        /// Also print the reduced Gröbner basis
        #[arg(long)]
        basis: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Canonical coordinates of a family member
    Extract {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: i64,
    },
    /// Invariants of a catalogued singularity germ
    Sing {
        name: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// The chamber structure, or the chamber containing a character
    Chambers {
        #[arg(long, allow_hyphen_values = true)]
        character: Option<String>,
    },
    /// Run verification suites and print a JSON report
    Verify { suite: Suite },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["point", "desc", "family"])))]
struct ClassifyArgs {
    #[arg(long)]
    point: Option<String>,
    #[arg(long)]
    desc: Option<String>,
    #[arg(long)]
    family: Option<String>,
    /// Chamber name (i, ii, iii, c0a, c0b) or an integer character `a,b`
    #[arg(long, default_value = "i", allow_hyphen_values = true)]
    chamber: String,
    /// Print the full report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Universal,
    Blowdown,
    C0,
    P2,
    Weierstrass,
    All,
}

#[derive(Debug)]
pub struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Failure {
        Failure { code: 2, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::BudgetExhausted(_) => 3,
            Error::Parse(_)
            | Error::Invalid(_)
            | Error::UnknownVariable(_)
            | Error::MissingVariable(_)
            | Error::NotTabulated(_) => 2,
            _ => 1,
        };
        Failure { code, msg: e.to_string() }
    }
}

pub struct Output {
    text: String,
    code: u8,
}

fn pass(text: String) -> Output {
    Output { text, code: 0 }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if let Some(name) = path.strip_prefix('@') {
        return fixtures::get(name)
            .map(str::to_string)
            .ok_or_else(|| Failure::usage(format!("no bundled fixture `{name}`")));
    }
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))
}

enum ChamberArg {
    Named(Chamber),
    Character(Character),
}

fn parse_chamber(s: &str) -> Result<ChamberArg, Failure> {
    if let Ok(ch) = Chamber::from_name(s) {
        return Ok(ChamberArg::Named(ch));
    }
    parse_character(s).map(ChamberArg::Character)
}

fn parse_character(s: &str) -> Result<Character, Failure> {
    let bad = || Failure::usage(format!("`{s}` is neither a chamber name nor an integer character `a,b`"));
    let (a, b) = s.trim_matches(|c| c == '(' || c == ')').split_once(',').ok_or_else(bad)?;
    Ok(Character(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn loci_text(loci: &[LocusName]) -> String {
    let names: Vec<&str> = loci.iter().map(|l| l.name()).collect();
    format!("{{{}}}", names.join(", "))
}

fn classify_point(p: &ModuliPoint, ch: &ChamberArg) -> Result<(String, Value), Failure> {
    let rank = minors_rank_ok(p);
    let (line, report) = match ch {
        ChamberArg::Named(c) if Chamber::PRIMARY.contains(c) => {
            let loci = unstable_loci(p, *c)?;
            let line = if loci.is_empty() { "stable".to_string() } else { format!("unstable: {}", loci_text(&loci)) };
            let names: Vec<&str> = loci.iter().map(|l| l.name()).collect();
            (line, json!({ "chamber": c.name(), "unstable_loci": names }))
        }
        ChamberArg::Named(c) => {
            // the other two chambers are the transposes of (ii) and (iii)
            let t = c.transposed();
            let loci = unstable_loci(&p.swap_indices(), t)?;
            let line = if loci.is_empty() {
                "stable".to_string()
            } else {
                format!("unstable: {} with p1 and p2 exchanged", loci_text(&loci))
            };
            let names: Vec<&str> = loci.iter().map(|l| l.name()).collect();
            (line, json!({ "chamber": c.name(), "transposed": t.name(), "unstable_loci_swapped": names }))
        }
        ChamberArg::Character(chi) => {
            let ok = is_semistable(p, *chi);
            let word = if ok { "semistable" } else { "unstable" };
            (word.to_string(), json!({ "character": [chi.0, chi.1], "semistable": ok }))
        }
    };
    let mut report = report;
    report["verdict"] = json!(line);
    report["rank_condition"] = json!(rank);
    Ok((line, report))
}

fn stability_index(ch: &ChamberArg) -> Result<u8, Failure> {
    match ch {
        ChamberArg::Named(Chamber::I) => Ok(1),
        ChamberArg::Named(Chamber::II) => Ok(2),
        ChamberArg::Named(Chamber::III) => Ok(3),
        _ => Err(Failure::usage("curve descriptions are classified in chambers i, ii and iii only")),
    }
}

fn classify_desc(d: &CurveDescription, ch: &ChamberArg) -> Result<(String, Value), Failure> {
    let (verdict, path) = decision_path(d, stability_index(ch)?)?;
    let line = verdict.to_string();
    Ok((line.clone(), json!({ "verdict": line, "path": path })))
}

fn classify(a: &ClassifyArgs) -> Result<Output, Failure> {
    let ch = parse_chamber(&a.chamber)?;
    let (line, mut report) = if let Some(f) = &a.point {
        let p = ModuliPoint::from_json(&read_input(f)?)?;
        classify_point(&p, &ch)?
    } else if let Some(f) = &a.desc {
        let d = CurveDescription::from_json(&read_input(f)?)?;
        classify_desc(&d, &ch)?
    } else {
        let f = a.family.as_deref().expect("clap enforces one input");
        let pres = FamilySpec::from_json(&read_input(f)?)?.build()?;
        let d = describe(&pres)?;
        let (line, mut report) = classify_desc(&d, &ch)?;
        report["description"] = serde_json::to_value(&d).expect("serializable");
        (line, report)
    };
    if a.json {
        report["chamber_arg"] = json!(a.chamber);
        Ok(pass(serde_json::to_string_pretty(&report).expect("serializable")))
    } else {
        Ok(pass(line))
    }
}

fn curve_eq(point: &str, basis: bool, budget: usize) -> Result<Output, Failure> {
    let p = ModuliPoint::from_json(&read_input(point)?)?;
    let ideal = build_curve_ideal(&p);
    let mut out = String::new();
    for g in &ideal.generators {
        writeln!(out, "{g}").unwrap();
    }
    if basis {
        let gb = curve_groebner_basis(&p, budget)?;
        writeln!(out, "-- reduced Gröbner basis ({} elements)", gb.len()).unwrap();
        for g in gb.elements() {
            writeln!(out, "{g}").unwrap();
        }
    }
    Ok(pass(out.trim_end().to_string()))
}

fn extract_cmd(family: &str, precision: i64) -> Result<Output, Failure> {
    let pres = FamilySpec::from_json(&read_input(family)?)?.build()?;
    let r = extract_with_precision(&pres, precision)?;
    Ok(pass(serde_json::to_string_pretty(&r).expect("serializable")))
}

fn sing(name: &str, n: Option<usize>) -> Result<Output, Failure> {
    let g = germ_catalog(name, n)?;
    let inv = invariants(&g)?;
    Ok(pass(serde_json::to_string(&inv).expect("serializable")))
}

fn chambers(character: Option<&str>) -> Result<Output, Failure> {
    let mut out = String::new();
    match character {
        None => {
            for c in Chamber::ALL {
                let (v1, v2) = c.cone().generators();
                let loci = match LocusName::for_chamber(c) {
                    Ok(l) => loci_text(l),
                    Err(_) => format!("transpose of {}", c.transposed().name()),
                };
                writeln!(out, "{:<4} cone {:?} {:?}  representative {}  loci {}", c.name(), v1, v2, c.representative(), loci)
                    .unwrap();
            }
        }
        Some(s) => {
            let chi = parse_character(s)?;
            match Chamber::ALL.iter().find(|c| cone_contains(&c.cone(), chi)) {
                Some(c) => write!(out, "{}", c.name()).unwrap(),
                None => write!(out, "none: {chi} lies on a wall or outside the chambers").unwrap(),
            }
        }
    }
    Ok(pass(out.trim_end().to_string()))
}

fn run_checks(names: &[&str]) -> Result<BTreeMap<String, Check>, Failure> {
    let results: Vec<(String, m22_core::Result<Check>)> = std::thread::scope(|s| {
        let handles: Vec<_> = names.iter().map(|&n| (n, s.spawn(move || run_check(n)))).collect();
        handles
            .into_iter()
            .map(|(n, h)| (n.to_string(), h.join().unwrap_or_else(|_| Err(Error::Internal(format!("check `{n}` panicked"))))))
            .collect()
    });
    let mut out = BTreeMap::new();
    for (n, r) in results {
        out.insert(n, r?);
    }
    Ok(out)
}

fn verify(suite: Suite) -> Result<Output, Failure> {
    let names: Vec<&str> = match suite {
        Suite::All => CHECK_NAMES.to_vec(),
        Suite::Universal => vec!["universal"],
        Suite::Blowdown => vec!["blowdown"],
        Suite::C0 => vec!["c0"],
        Suite::P2 => vec!["p2"],
        Suite::Weierstrass => vec!["weierstrass"],
    };
    let mut report = run_checks(&names)?;
    if suite == Suite::All {
        report.insert("fixtures".into(), fixtures::check());
    }
    let ok = report.values().all(|c| c.pass);
    let text = serde_json::to_string_pretty(&report).expect("serializable");
    Ok(Output { text, code: if ok { 0 } else { 1 } })
}

pub fn execute(cli: &Cli) -> Result<Output, Failure> {
    match &cli.cmd {
        Cmd::Classify(a) => classify(a),
        Cmd::CurveEq { point, basis, budget } => curve_eq(point, *basis, *budget),
        Cmd::Extract { family, precision } => extract_cmd(family, *precision),
        Cmd::Sing { name, n } => sing(name, *n),
        Cmd::Chambers { character } => chambers(character.as_deref()),
        Cmd::Verify { suite } => verify(*suite),
    }
}

/// Parses and runs one command line, returning what would be printed and the exit code.
pub fn run_args<I: IntoIterator<Item = String>>(args: I) -> (String, u8) {
    match Cli::try_parse_from(args) {
        Ok(cli) => match execute(&cli) {
            Ok(o) => (o.text, o.code),
            Err(f) => (format!("error: {}", f.msg), f.code),
        },
        Err(e) => (e.to_string(), if e.use_stderr() { 2 } else { 0 }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(o) => {
            println!("{}", o.text);
            ExitCode::from(o.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
