use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use rgwa::corpus::{corpus_files, standard_objects_arc};
use rgwa::derived::{
    action_from_split_extension, check_derived_action, check_split_extension, DerivedActionTriple, SplitExtension,
    SplitExtensionFile, TripleFile,
};
use rgwa::pentaction::{check_pentaction, enumerate_pentactions, enumerate_pentactions_bruteforce, PentactionFile};
use rgwa::representability::{build_pa_object, pa_report, verify_representability};
use rgwa::structure::{analyze, noether_quotient};
use rgwa::{check_axioms, Budget, Error, FiniteGwaObject, GwaMorphism, ObjectFile, DEFAULT_BUDGET};

#[derive(Parser, Debug)]
#[command(name = "rgwa", about = "Check and enumerate finite reduced groups with action")]
struct Cli {
    /// Search budget in candidate visits.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check an object, split extension, triple or pentaction file.
    Validate {
        file: PathBuf,
        /// Object file for a pentaction file, or the acted-on object of a triple.
        #[arg(long)]
        object: Option<PathBuf>,
        /// Acting object of a triple file.
        #[arg(long)]
        acting: Option<PathBuf>,
        /// Only check group and action axioms.
        #[arg(long)]
        no_reduced: bool,
    },
    /// Write the standard object files into a directory.
    Corpus { dir: PathBuf },
    /// Enumerate and count the pentactions of an object.
    Pentactions { file: PathBuf },
    /// Build PA(A) and check it and its action on A.
    Pa { file: PathBuf },
    /// Perfectness, stabilizer and weak stabilizer.
    Analyze { file: PathBuf },
    /// Weak-stabilizer quotient chain of an abelian trivial-action object.
    Noether { file: PathBuf },
    /// Check that PA(A) represents every derived action of small corpus objects.
    Represent {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_order: usize,
    },
    /// Compare pruned and brute-force pentaction enumeration.
    Oracle { file: PathBuf },
}

/// A finished run: JSON payload plus whether every check passed.
struct Outcome {
    value: Value,
    passed: bool,
}

fn outcome(value: impl Serialize, passed: bool) -> Result<Outcome, Error> {
    let value = serde_json::to_value(value).map_err(|e| Error::Json {
        path: "<output>".into(),
        source: e,
    })?;
    Ok(Outcome { value, passed })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Json {
        path: path.display().to_string(),
        source: e,
    })
}

fn load_object(path: &Path, require_reduced: bool) -> Result<Arc<FiniteGwaObject>, Error> {
    let file: ObjectFile = read_json(path)?;
    Ok(Arc::new(file.into_object(require_reduced)?))
}

fn validate(file: &Path, object: Option<&Path>, acting: Option<&Path>, no_reduced: bool) -> Result<Outcome, Error> {
    let raw: Value = read_json(file)?;
    let has = |k: &str| raw.get(k).is_some();
    fn parse<T: serde::de::DeserializeOwned>(file: &Path, v: Value) -> Result<T, Error> {
        serde_json::from_value(v).map_err(|e| Error::Json {
            path: file.display().to_string(),
            source: e,
        })
    }
    if has("add") {
        let f: ObjectFile = parse(file, raw)?;
        if f.order != f.add.len() {
            return Err(Error::input(format!(
                "declared order {} does not match table size",
                f.order
            )));
        }
        let report = check_axioms(f.order, &f.add, &f.act, !no_reduced)?;
        let passed = report.passed;
        return outcome(report, passed);
    }
    if has("i") && has("p") && has("j") {
        let f: SplitExtensionFile = parse(file, raw)?;
        let base = file.parent().unwrap_or(Path::new("."));
        let a = load_object(&base.join(&f.a), false)?;
        let e = load_object(&base.join(&f.e), false)?;
        let b = load_object(&base.join(&f.b), false)?;
        let ext = SplitExtension {
            i: GwaMorphism::new(a.clone(), e.clone(), f.i)?,
            p: GwaMorphism::new(e.clone(), b.clone(), f.p)?,
            j: GwaMorphism::new(b.clone(), e.clone(), f.j)?,
            a,
            e,
            b,
        };
        let ext_report = check_split_extension(&ext)?;
        if !ext_report.passed {
            return outcome(json!({ "extension": ext_report }), false);
        }
        let triple = action_from_split_extension(&ext)?;
        let action = check_derived_action(&triple);
        let passed = action.passed;
        return outcome(
            json!({ "extension": ext_report, "triple": triple.to_file(), "derived_action": action }),
            passed,
        );
    }
    if has("dot") {
        let f: TripleFile = parse(file, raw)?;
        let (Some(a), Some(b)) = (object, acting) else {
            return Err(Error::input("a triple file needs --object A.json and --acting B.json"));
        };
        let t = DerivedActionTriple::from_file(f, load_object(a, false)?, load_object(b, false)?)?;
        let report = check_derived_action(&t);
        let passed = report.passed;
        return outcome(report, passed);
    }
    if has("dotL") {
        let f: PentactionFile = parse(file, raw)?;
        let Some(a) = object else {
            return Err(Error::input("a pentaction file needs --object A.json"));
        };
        let a = load_object(a, true)?;
        if f.object != a.name() {
            return Err(Error::input(format!(
                "pentaction refers to {}, object is {}",
                f.object,
                a.name()
            )));
        }
        let report = check_pentaction(&a, &f.maps)?;
        let passed = report.passed;
        return outcome(report, passed);
    }
    Err(Error::input(format!("{}: unrecognized file kind", file.display())))
}

fn emit_corpus(dir: &Path) -> Result<Outcome, Error> {
    fs::create_dir_all(dir).map_err(|e| Error::Io {
        path: dir.display().to_string(),
        source: e,
    })?;
    let mut written = Vec::new();
    for f in corpus_files() {
        let path = dir.join(format!("{}.json", f.name));
        let mut text = serde_json::to_string_pretty(&f).expect("object serializes");
        text.push('\n');
        fs::write(&path, text).map_err(|e| Error::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        written.push(path.display().to_string());
    }
    outcome(json!({ "written": written }), true)
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let budget = Budget::new(cli.budget);
    match &cli.command {
        Command::Validate {
            file,
            object,
            acting,
            no_reduced,
        } => validate(file, object.as_deref(), acting.as_deref(), *no_reduced),
        Command::Corpus { dir } => emit_corpus(dir),
        Command::Pentactions { file } => {
            let a = load_object(file, true)?;
            let all = enumerate_pentactions(&a, &budget)?;
            let files: Vec<_> = all.iter().map(|p| p.to_file(&a)).collect();
            outcome(
                json!({ "object": a.name(), "count": all.len(), "pentactions": files }),
                true,
            )
        }
        Command::Pa { file } => {
            let a = load_object(file, true)?;
            let pa = build_pa_object(&a, &budget)?;
            let report = pa_report(&pa)?;
            let passed = report.passed();
            outcome(report, passed)
        }
        Command::Analyze { file } => {
            let a = load_object(file, true)?;
            outcome(analyze(&a, &budget)?, true)
        }
        Command::Noether { file } => {
            let a = load_object(file, true)?;
            let chain = noether_quotient(&a, &budget)?;
            let passed = chain.quotient_weak_stabilizer.is_trivial() && chain.is_strict();
            let subgroups: Vec<_> = chain.subgroups.iter().map(|s| s.members().to_vec()).collect();
            let summary = chain.summary();
            outcome(
                json!({
                    "subgroup_orders": summary.subgroup_orders,
                    "quotient_order": summary.quotient_order,
                    "subgroups": subgroups,
                    "quotient": chain.quotient.to_file(),
                    "quotient_weak_stabilizer": chain.quotient_weak_stabilizer.members(),
                }),
                passed,
            )
        }
        Command::Represent { file, max_order } => {
            let a = load_object(file, true)?;
            let pa = build_pa_object(&a, &budget)?;
            let mut report = pa_report(&pa)?;
            if pa.object.is_some() {
                let objects: Vec<_> = standard_objects_arc()
                    .into_iter()
                    .filter(|b| b.order() <= *max_order)
                    .collect();
                report.representability = Some(verify_representability(&pa, &objects, &budget)?);
            }
            let passed = report.passed() && report.representability.is_some();
            outcome(report, passed)
        }
        Command::Oracle { file } => {
            let a = load_object(file, true)?;
            let brute = enumerate_pentactions_bruteforce(&a)?;
            let pruned = enumerate_pentactions(&a, &budget)?;
            let equal = brute == pruned;
            outcome(
                json!({
                    "object": a.name(),
                    "pruned_count": pruned.len(),
                    "bruteforce_count": brute.len(),
                    "equal": equal,
                }),
                equal,
            )
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Budget { .. } => 3,
        Error::Rejected { .. } | Error::Structural(_) => 1,
        Error::Input(_) | Error::Unsupported(_) | Error::Io { .. } | Error::Json { .. } => 2,
    }
}

fn emit(cli: &Cli, value: &Value) -> std::io::Result<()> {
    let mut text = if cli.pretty {
        serde_json::to_string_pretty(value)?
    } else {
        serde_json::to_string(value)?
    };
    text.push('\n');
    match &cli.out {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, code) = match run(&cli) {
        Ok(o) => (o.value, if o.passed { 0 } else { 1 }),
        Err(e) => {
            let mut value = json!({ "error": e.to_string() });
            if let Error::Rejected { report, .. } = &e {
                value["report"] = serde_json::to_value(report).expect("report serializes");
            }
            (value, exit_code(&e))
        }
    };
    if let Err(e) = emit(&cli, &value) {
        eprintln!("failed to write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
