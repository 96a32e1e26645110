//! `eqrel`: load finite structures, compute congruences, normalizations and
//! generated relations, and run the verification suites.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error, 3 the input could
//! not be loaded or a flag value is invalid for it.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use eqrel_core::normality::{bourn_normal_failure, nor, normal_to_witnesses, rel};
use eqrel_core::relations::{
    check_congruence, enumerate_congruences_with, parse_relation_literal, parse_subset_literal, DEFAULT_MAX_CARRIER,
};
use eqrel_core::structures::{generated, load_structure, validate_structure};
use eqrel_core::theorems::{load_failure, run_all, Instance, SuiteOptions, VerificationReport, SUITES};
use eqrel_core::{EquivRelation, Exec, FiniteStructure, Subobject};

/// Writes a line to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "eqrel", version, about = "Bourn-normal subobjects and equivalence relations on finite structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest carrier for which congruences are enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CARRIER)]
    max_carrier: usize,
    /// Run on a single thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of the structure's context.
    Validate { file: PathBuf },
    /// List every congruence.
    Congruences { file: PathBuf },
    /// Normalization of a congruence.
    Nor {
        file: PathBuf,
        /// Relation literal such as "{0,2},{1,3}".
        #[arg(long)]
        rel: String,
    },
    /// Congruence generated by the parallel pairs of a subobject.
    Rel {
        file: PathBuf,
        /// Generators of the subobject, e.g. "0,2".
        #[arg(long)]
        subset: String,
    },
    /// Test Bourn-normality of a subobject, to its own Rel or to a given relation.
    CheckNormal {
        file: PathBuf,
        #[arg(long)]
        subset: String,
        #[arg(long)]
        rel: Option<String>,
    },
    /// Every congruence a subobject is Bourn-normal to.
    Witnesses {
        file: PathBuf,
        #[arg(long)]
        subset: String,
    },
    /// Run the verification suites on files or directories of `.alg` files.
    Verify {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Run a single suite.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: Option<String>,
    },
}

/// A failure that maps to a nonzero exit code.
enum Failure {
    /// Exit 1: a check did not pass.
    Check,
    /// Exit 3: input could not be loaded or a flag is invalid for it.
    Input(String),
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Input(s)
    }
}

type Outcome = Result<(), Failure>;

fn load(path: &Path) -> Result<Arc<FiniteStructure>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let x = load_structure(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let report = validate_structure(&x);
    if let Some(v) = report.violations.first() {
        return Err(Failure::Input(format!("{}: invalid structure: {v}", path.display())));
    }
    Ok(Arc::new(x))
}

fn subset(x: &FiniteStructure, literal: &str) -> Result<Subobject, Failure> {
    let gens = parse_subset_literal(literal).map_err(|e| e.to_string())?;
    if let Some(&g) = gens.iter().find(|&&g| g >= x.size()) {
        return Err(Failure::Input(format!("element {g} is outside the carrier of size {}", x.size())));
    }
    Ok(generated(x, &gens))
}

fn relation(x: &FiniteStructure, literal: &str) -> Result<EquivRelation, Failure> {
    let r = parse_relation_literal(x.size(), literal).map_err(|e| e.to_string())?;
    check_congruence(x, &r).map_err(|e| e.to_string())?;
    Ok(r)
}

fn print_json(v: &serde_json::Value) {
    out!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn validate(cli: &Cli, file: &Path) -> Outcome {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let x = load_structure(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    let report = validate_structure(&x);
    match cli.format {
        Format::Json => print_json(&json!({
            "file": file.display().to_string(),
            "context": x.context(),
            "size": x.size(),
            "valid": report.is_ok(),
            "violations": report.violations,
        })),
        Format::Text if report.is_ok() => out!("ok: {} structure with {} elements", x.context(), x.size()),
        Format::Text => {
            for v in &report.violations {
                out!("violation: {v} at {:?}", v.witness);
            }
        }
    }
    if report.is_ok() {
        Ok(())
    } else {
        Err(Failure::Input(format!("{}: {} axiom violations", file.display(), report.violations.len())))
    }
}

fn run(cli: &Cli) -> Outcome {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match &cli.command {
        Command::Validate { file } => validate(cli, file),
        Command::Congruences { file } => {
            let x = load(file)?;
            let all = enumerate_congruences_with(&x, cli.max_carrier, exec).map_err(|e| e.to_string())?;
            let literals: Vec<String> = all.iter().map(ToString::to_string).collect();
            match cli.format {
                Format::Json => print_json(&json!({ "count": all.len(), "congruences": literals })),
                Format::Text => {
                    out!("{} congruences", all.len());
                    for l in literals {
                        out!("  {l}");
                    }
                }
            }
            Ok(())
        }
        Command::Nor { file, rel: literal } => {
            let x = load(file)?;
            let r = relation(&x, literal)?;
            let n = nor(&x, &r).map_err(|e| e.to_string())?;
            let image = n.image();
            match cli.format {
                Format::Json => print_json(&json!({ "relation": r.to_string(), "nor": image })),
                Format::Text => out!("Nor(R) = {{{}}}", n.subobject().to_literal()),
            }
            Ok(())
        }
        Command::Rel { file, subset: gens } => {
            let x = load(file)?;
            let s = subset(&x, gens)?;
            let r = rel(s.inclusion(&x).map());
            match cli.format {
                Format::Json => print_json(&json!({
                    "subobject": s.members(),
                    "rel": r.to_string(),
                    "classes": r.classes(),
                })),
                Format::Text => {
                    out!("subobject {{{}}}", s.to_literal());
                    out!("Rel(n) = {r}");
                }
            }
            Ok(())
        }
        Command::CheckNormal { file, subset: gens, rel: literal } => {
            let x = load(file)?;
            let s = subset(&x, gens)?;
            let n = s.inclusion(&x);
            let (r, given) = match literal {
                Some(l) => (relation(&x, l)?, true),
                None => (rel(n.map()), false),
            };
            let failure = bourn_normal_failure(&n, &r);
            let diagnostic = failure.as_ref().map(|f| {
                if given {
                    format!("image is not a class of R ({f})")
                } else {
                    format!("image is not a class of Rel(n) ({f})")
                }
            });
            match cli.format {
                Format::Json => print_json(&json!({
                    "subobject": s.members(),
                    "relation": r.to_string(),
                    "normal": failure.is_none(),
                    "diagnostic": diagnostic,
                })),
                Format::Text => match &diagnostic {
                    None => out!("Bourn-normal: {{{}}} is normal to {r}", s.to_literal()),
                    Some(d) => out!("not Bourn-normal: {d}"),
                },
            }
            if failure.is_none() {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Witnesses { file, subset: gens } => {
            let x = load(file)?;
            let s = subset(&x, gens)?;
            let ws = normal_to_witnesses(&s.inclusion(&x), cli.max_carrier).map_err(|e| e.to_string())?;
            let literals: Vec<String> = ws.iter().map(ToString::to_string).collect();
            match cli.format {
                Format::Json => print_json(&json!({ "subobject": s.members(), "witnesses": literals })),
                Format::Text => {
                    out!("{} witnesses for {{{}}}", ws.len(), s.to_literal());
                    for l in literals {
                        out!("  {l}");
                    }
                }
            }
            Ok(())
        }
        Command::Verify { paths, suite } => verify(cli, paths, suite.as_deref(), exec),
    }
}

/// Expands directories to their `.alg` files, sorted.
fn expand(paths: &[PathBuf]) -> Result<Vec<PathBuf>, Failure> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let entries = std::fs::read_dir(p).map_err(|e| format!("{}: {e}", p.display()))?;
            let mut files: Vec<PathBuf> = entries
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|ext| ext == "alg"))
                .collect();
            files.sort();
            out.extend(files);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

fn verify(cli: &Cli, paths: &[PathBuf], suite: Option<&str>, exec: Exec) -> Outcome {
    let opts = SuiteOptions { max_carrier: cli.max_carrier, exec };
    let files = expand(paths)?;
    let reports: Vec<VerificationReport> = match suite {
        None => run_all(&files, &opts),
        Some(name) => files
            .iter()
            .map(|f| match Instance::load(f) {
                Ok(instance) => single_suite(name, &instance, &opts),
                Err(e) => load_failure(f, &e),
            })
            .collect(),
    };
    match cli.format {
        Format::Json => print_json(&serde_json::to_value(&reports).expect("reports serialize")),
        Format::Text => {
            for r in &reports {
                out!("{}", r.to_text().trim_end());
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            out!("{passed}/{} instances passed", reports.len());
        }
    }
    let load_failed = reports.iter().any(|r| r.checks.iter().any(|c| c.id == "load" && !c.pass));
    if load_failed {
        Err(Failure::Input("some files could not be loaded".into()))
    } else if reports.iter().all(VerificationReport::passed) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn single_suite(name: &str, instance: &Instance, opts: &SuiteOptions) -> VerificationReport {
    use eqrel_core::theorems::*;
    match name {
        "normalization" => suite_normalization(instance, opts),
        "rel" => suite_rel(instance, opts),
        "triangles" => suite_triangles(instance, opts),
        "equivalence" => suite_equivalence(instance, opts),
        _ => suite_context_specific(instance, opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}
