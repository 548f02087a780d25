//! Command-line front end. Exit codes: 0 success or agreement, 1 invalid
//! input, 2 disagreement, 3 enumeration budget exceeded.

pub mod document;
pub mod report;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::catalog::{build, random_2step, standard_entries, CatalogEntry, Known, Params, KEYS};
use crate::classify::{breadth_profile, theorem_verdict, TheoremVerdict};
use crate::error::{Error, Result};
use crate::gfp::PrimeField;
use crate::image::{report_from_image, word_image, word_image_bruteforce, Budgets};
use crate::liecore::LieAlgebra;

pub use document::AlgebraDocument;
pub use report::{analyze, ReportDocument, Sections};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "lieword", version, about = "Word-map images of nilpotent Lie algebras over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a JSON algebra document against the Lie axioms.
    Validate {
        /// Path, or `-` for stdin.
        file: String,
    },
    /// Report structure, breadth, word image and verdict (all by default).
    Analyze {
        file: String,
        #[command(flatten)]
        sections: SectionFlags,
    },
    /// List, show or export the named algebras.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Check every catalog verdict and expected value.
    Verify {
        /// Verify all standard entries.
        #[arg(long, conflicts_with = "key")]
        all: bool,
        key: Option<String>,
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',', default_value = "3,5")]
        p: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Seeded random 2-step algebra with g generators and dim L' = d.
    Random {
        #[arg(long)]
        generators: usize,
        #[arg(long)]
        derived: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// Emit a report instead of the document.
        #[arg(long)]
        analyze: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compare the fast word image with brute force over all pairs.
    Oracle {
        file: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct SectionFlags {
    #[arg(long)]
    image: bool,
    #[arg(long)]
    breadth: bool,
    #[arg(long)]
    verdict: bool,
    #[arg(long)]
    json: bool,
    /// Add per-phase milliseconds (output is then not reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    /// List the catalog keys.
    List,
    /// Show an entry with its expected invariants.
    Show {
        key: String,
        #[command(flatten)]
        params: CatalogParams,
        #[arg(long)]
        json: bool,
    },
    /// Print an entry as a JSON algebra document.
    Export {
        key: String,
        #[command(flatten)]
        params: CatalogParams,
    },
}

#[derive(Debug, Args)]
struct CatalogParams {
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[arg(long)]
    eps: Option<i64>,
    #[arg(long)]
    r: Option<i64>,
    #[arg(long)]
    size: Option<usize>,
}

impl CatalogParams {
    fn params(&self) -> Params {
        Params {
            size: self.size,
            eps: self.eps,
            r: self.r,
        }
    }
}

/// Result of checking one catalog entry.
#[derive(Debug, Clone, Serialize)]
pub struct EntryCheck {
    pub key: String,
    pub p: u32,
    pub params: Params,
    pub verdict: Option<TheoremVerdict>,
    /// Expected values that did not match, as `field: expected X, got Y`.
    pub mismatches: Vec<String>,
    pub budget_exceeded: bool,
}

impl EntryCheck {
    pub fn agrees(&self) -> bool {
        !self.budget_exceeded
            && self.mismatches.is_empty()
            && self.verdict.as_ref().is_some_and(TheoremVerdict::sound)
    }
}

fn compare<T: PartialEq + std::fmt::Debug>(
    out: &mut Vec<String>,
    field: &str,
    expected: &Option<Known<T>>,
    got: T,
) {
    if let Some(k) = expected {
        if k.value != got {
            out.push(format!("{field}: expected {:?}, got {:?}", k.value, got));
        }
    }
}

/// Verdict plus every expected value recorded for the entry.
pub fn check_entry(entry: &CatalogEntry, budgets: &Budgets) -> Result<EntryCheck> {
    let mut check = EntryCheck {
        key: entry.key.clone(),
        p: entry.p,
        params: entry.params,
        verdict: None,
        mismatches: Vec::new(),
        budget_exceeded: false,
    };
    let run = |check: &mut EntryCheck| -> Result<()> {
        let l = &entry.algebra;
        let e = &entry.expected;
        let s = l.structure_report();
        let m = &mut check.mismatches;
        compare(m, "dim", &e.dim, s.dim);
        compare(m, "class", &e.class.as_ref().map(|k| Known { value: Some(k.value), source: k.source }), s.class);
        compare(m, "derived_dim", &e.derived_dim, s.derived_dim);
        compare(m, "center_dim", &e.center_dim, s.center_dim);
        if e.breadth_type.is_some() {
            compare(m, "breadth_type", &e.breadth_type, breadth_profile(l, budgets.image)?.type_set);
        }
        if e.w_equals_derived.is_some() || e.sum_depth.is_some() {
            let img = word_image(l, budgets)?;
            let r = report_from_image(l, &img, budgets)?;
            compare(m, "w_equals_derived", &e.w_equals_derived, r.equals_derived);
            compare(m, "sum_depth", &e.sum_depth, r.sum_depth);
        }
        check.verdict = Some(theorem_verdict(l, budgets)?);
        Ok(())
    };
    match run(&mut check) {
        Ok(()) => Ok(check),
        Err(Error::EnumerationTooLarge { .. }) => {
            check.budget_exceeded = true;
            Ok(check)
        }
        Err(e) => Err(e),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::EnumerationTooLarge { .. } => EXIT_BUDGET,
        _ => EXIT_INVALID,
    }
}

fn read_input(path: &str) -> Result<String> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Error::Document(format!("cannot read {path}: {e}")))?;
    Ok(text)
}

fn load(path: &str) -> Result<LieAlgebra> {
    AlgebraDocument::parse(&read_input(path)?)?.to_algebra()
}

/// Loads and rejects documents violating the Lie axioms.
fn load_valid(path: &str) -> Result<LieAlgebra> {
    let l = load(path)?;
    let report = l.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidAlgebra(format!(
            "{v} ({} violation(s); run `validate` for the full list)",
            report.violations.len()
        )));
    }
    Ok(l)
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializes")
}

/// Runs the CLI; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let budgets = match Budgets::from_env() {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INVALID;
        }
    };
    let mut buf = String::new();
    let code = match dispatch(cli.command, &budgets, &mut buf) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.write_all(buf.as_bytes());
            buf.clear();
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    };
    let _ = out.write_all(buf.as_bytes());
    let _ = out.flush();
    code
}

fn dispatch(command: Command, budgets: &Budgets, o: &mut String) -> Result<i32> {
    match command {
        Command::Validate { file } => cmd_validate(&file, o),
        Command::Analyze { file, sections } => {
            let l = load_valid(&file)?;
            let none = !(sections.image || sections.breadth || sections.verdict);
            let s = Sections {
                image: sections.image || none,
                breadth: sections.breadth || none,
                verdict: sections.verdict || none,
                timings: sections.timings,
            };
            let report = analyze(&l, s, budgets)?;
            o.push_str(&if sections.json { report.to_json() + "\n" } else { report.render() });
            Ok(match &report.verdict {
                Some(v) if !v.sound() => EXIT_DISAGREE,
                _ => EXIT_OK,
            })
        }
        Command::Catalog(c) => cmd_catalog(c, o),
        Command::Verify { all, key, p, json: as_json } => {
            let keys = match (all, key) {
                (true, _) => None,
                (false, Some(k)) => Some(k),
                (false, None) => {
                    return Err(Error::InvalidParameter("verify needs --all or a catalog key".into()))
                }
            };
            cmd_verify(keys.as_deref(), &p, budgets, as_json, o)
        }
        Command::Random {
            generators,
            derived,
            seed,
            p,
            analyze: with_report,
            json: as_json,
        } => {
            let l = random_2step(PrimeField::new(p)?, generators, derived, seed)?;
            if with_report {
                let report = analyze(&l, Sections::all(), budgets)?;
                o.push_str(&if as_json { report.to_json() + "\n" } else { report.render() });
                Ok(match &report.verdict {
                    Some(v) if !v.sound() => EXIT_DISAGREE,
                    _ => EXIT_OK,
                })
            } else {
                o.push_str(&AlgebraDocument::from_algebra(&l).to_json());
                o.push('\n');
                Ok(EXIT_OK)
            }
        }
        Command::Oracle { file, json: as_json } => cmd_oracle(&file, budgets, as_json, o),
    }
}

fn cmd_validate(file: &str, o: &mut String) -> Result<i32> {
    let l = load(file)?;
    let report = l.validate();
    if report.is_valid() {
        let _ = writeln!(
            o,
            "valid: {} dim={} p={}",
            l.name().unwrap_or("(unnamed)"),
            l.dim(),
            l.field().modulus()
        );
        return Ok(EXIT_OK);
    }
    let _ = writeln!(o, "invalid: {} violation(s)", report.violations.len());
    for v in &report.violations {
        let _ = writeln!(o, "  {v}");
    }
    Ok(EXIT_INVALID)
}

#[derive(Serialize)]
struct ShowDocument<'a> {
    entry: &'a CatalogEntry,
    structure: crate::liecore::StructureReport,
}

fn known<T: std::fmt::Debug>(k: &Option<Known<T>>) -> String {
    match k {
        Some(k) => format!("{:?} [{}]", k.value, serde_json::to_value(k.source).expect("serializes").as_str().unwrap_or("")),
        None => "-".to_string(),
    }
}

fn cmd_catalog(c: CatalogCommand, o: &mut String) -> Result<i32> {
    match c {
        CatalogCommand::List => {
            for info in KEYS {
                let _ = writeln!(o, "{:<14} {:<24} {}", info.key, info.params, info.summary);
            }
        }
        CatalogCommand::Show { key, params, json: as_json } => {
            let entry = build(&key, PrimeField::new(params.p)?, &params.params())?;
            let structure = entry.algebra.structure_report();
            if as_json {
                o.push_str(&json(&ShowDocument { entry: &entry, structure }));
                o.push('\n');
            } else {
                let e = &entry.expected;
                let _ = writeln!(o, "key: {} p={} params={}", entry.key, entry.p, json_line(&entry.params));
                let _ = writeln!(o, "name: {}", entry.algebra.name().unwrap_or("(unnamed)"));
                let _ = writeln!(o, "expected:");
                let _ = writeln!(o, "  dim: {}", known(&e.dim));
                let _ = writeln!(o, "  class: {}", known(&e.class));
                let _ = writeln!(o, "  derived_dim: {}", known(&e.derived_dim));
                let _ = writeln!(o, "  center_dim: {}", known(&e.center_dim));
                let _ = writeln!(o, "  breadth_type: {}", known(&e.breadth_type));
                let _ = writeln!(o, "  w_equals_derived: {}", known(&e.w_equals_derived));
                let _ = writeln!(o, "  sum_depth: {}", known(&e.sum_depth));
                let _ = writeln!(
                    o,
                    "structure: lcs={} class={} center_dim={} stem={}",
                    report::tuple(&structure.lcs_dims),
                    structure.class.map_or("-".to_string(), |c| c.to_string()),
                    structure.center_dim,
                    structure.is_stem
                );
            }
        }
        CatalogCommand::Export { key, params } => {
            let entry = build(&key, PrimeField::new(params.p)?, &params.params())?;
            o.push_str(&AlgebraDocument::from_algebra(&entry.algebra).to_json());
            o.push('\n');
        }
    }
    Ok(EXIT_OK)
}

fn json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializes")
}

fn cmd_verify(key: Option<&str>, primes: &[u64], budgets: &Budgets, as_json: bool, o: &mut String) -> Result<i32> {
    let mut checks = Vec::new();
    for &p in primes {
        let field = PrimeField::new(p)?;
        let entries = match key {
            None => standard_entries(field)?,
            Some(k) => vec![build(k, field, &Params::default())?],
        };
        for entry in &entries {
            checks.push(check_entry(entry, budgets)?);
        }
    }
    if as_json {
        o.push_str(&json(&checks));
        o.push('\n');
    } else {
        for c in &checks {
            let status = if c.budget_exceeded {
                "BUDGET"
            } else if c.agrees() {
                "AGREE"
            } else {
                "DISAGREE"
            };
            let label = format!("{}{}", c.key, params_suffix(&c.params));
            let (rule, branch, predicted, computed) = match &c.verdict {
                Some(v) => (
                    json_line(&v.rule).trim_matches('"').to_string(),
                    v.branch.map_or("-".to_string(), |b| json_line(&b).trim_matches('"').to_string()),
                    json_line(&v.predicted).trim_matches('"').to_string(),
                    v.computed_w_neq.map_or("-".to_string(), |n| if n { "w!=L'" } else { "w=L'" }.to_string()),
                ),
                None => ("-".into(), "-".into(), "-".into(), "-".into()),
            };
            let _ = writeln!(
                o,
                "p={:<3} {:<20} {:<14} {:<36} {:<14} {:<6} {}",
                c.p, label, rule, branch, predicted, computed, status
            );
            for m in &c.mismatches {
                let _ = writeln!(o, "    mismatch {m}");
            }
            if let Some(v) = &c.verdict {
                for msg in &v.evidence.inconsistencies {
                    let _ = writeln!(o, "    inconsistent {msg}");
                }
            }
        }
        let agree = checks.iter().filter(|c| c.agrees()).count();
        let _ = writeln!(o, "{agree}/{} AGREE", checks.len());
    }
    Ok(if checks.iter().any(|c| !c.budget_exceeded && !c.agrees()) {
        EXIT_DISAGREE
    } else if checks.iter().any(|c| c.budget_exceeded) {
        EXIT_BUDGET
    } else {
        EXIT_OK
    })
}

fn params_suffix(p: &Params) -> String {
    let mut parts = Vec::new();
    if let Some(s) = p.size {
        parts.push(format!("size={s}"));
    }
    if let Some(e) = p.eps {
        parts.push(format!("eps={e}"));
    }
    if let Some(r) = p.r {
        parts.push(format!("r={r}"));
    }
    if parts.is_empty() {
        String::new()
    } else {
        format!("({})", parts.join(","))
    }
}

#[derive(Serialize)]
struct OracleReport {
    name: Option<String>,
    p: u32,
    dim: usize,
    derived_size: usize,
    fast_size: usize,
    bruteforce_size: usize,
    equal: bool,
    /// First codes present in exactly one of the two sets.
    only_fast: Vec<usize>,
    only_bruteforce: Vec<usize>,
}

fn cmd_oracle(file: &str, budgets: &Budgets, as_json: bool, o: &mut String) -> Result<i32> {
    let l = load_valid(file)?;
    let fast = word_image(&l, budgets)?;
    let brute = word_image_bruteforce(&l, budgets)?;
    let only = |a: &crate::image::ElementSet, b: &crate::image::ElementSet| -> Vec<usize> {
        a.codes().filter(|&c| !b.contains_code(c)).take(10).collect()
    };
    let r = OracleReport {
        name: l.name().map(str::to_string),
        p: l.field().modulus(),
        dim: l.dim(),
        derived_size: fast.universe_size(),
        fast_size: fast.len(),
        bruteforce_size: brute.len(),
        equal: fast == brute,
        only_fast: only(&fast, &brute),
        only_bruteforce: only(&brute, &fast),
    };
    if as_json {
        o.push_str(&json(&r));
        o.push('\n');
    } else {
        let _ = writeln!(
            o,
            "oracle: {} over F_{} dim={}",
            r.name.as_deref().unwrap_or("(unnamed)"),
            r.p,
            r.dim
        );
        let _ = writeln!(o, "  |L'|        = {}", r.derived_size);
        let _ = writeln!(o, "  word_image  = {}", r.fast_size);
        let _ = writeln!(o, "  bruteforce  = {}", r.bruteforce_size);
        let _ = writeln!(o, "  {}", if r.equal { "EQUAL" } else { "DIFFERENT" });
        if !r.equal {
            let _ = writeln!(o, "  only in word_image: {:?}", r.only_fast);
            let _ = writeln!(o, "  only in bruteforce: {:?}", r.only_bruteforce);
        }
    }
    Ok(if r.equal { EXIT_OK } else { EXIT_DISAGREE })
}
