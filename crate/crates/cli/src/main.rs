//! `coxanc`: verify the ancestor conjectures, inspect single elements,
//! analyze Coxeter elements and decompose words in the universal group.
//!
//! Exit codes: 0 when everything passes, 1 when a conjecture fails for some
//! group, 2 on usage, parse or build errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use coxanc_core::report::{
    reports_to_csv, reports_to_text, to_json, CoxElemReport, ElementReport, Format, UniversalReport,
};
use coxanc_core::{parse_spec, verify, GroupTable, SweepOptions, SystemSpec, Word};

#[derive(Parser, Debug)]
#[command(name = "coxanc", version, about = "Ancestor decompositions in Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the ancestor property and the rank bound on whole groups.
    Verify(VerifyArgs),
    /// Prefixes, ancestors and decompositions of one element.
    Element(ElementArgs),
    /// Coloring, longest path and ilen spectrum of the Coxeter elements.
    Coxelems(CoxelemsArgs),
    /// Decompose (r1 ... rn)^k in the universal group of rank n.
    Universal(UniversalArgs),
}

#[derive(Args, Debug)]
struct Output {
    /// json, csv or text.
    #[arg(long, default_value = "text")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Group descriptor such as A5, B3xI2(5) or file:path.cox. Repeatable.
    #[arg(long = "spec")]
    specs: Vec<String>,
    /// Named spec list; `paper` is the only preset.
    #[arg(long)]
    preset: Option<String>,
    #[command(flatten)]
    output: Output,
    /// Worker threads; 1 forces the serial path.
    #[arg(long)]
    workers: Option<usize>,
    /// Largest group order to enumerate. Overrides COXANC_ORDER_GUARD.
    #[arg(long)]
    order_guard: Option<usize>,
}

#[derive(Args, Debug)]
struct ElementArgs {
    #[arg(long)]
    spec: String,
    /// Comma-separated 1-based generator indices; empty for the identity.
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    #[command(flatten)]
    output: Output,
    #[arg(long)]
    order_guard: Option<usize>,
}

#[derive(Args, Debug)]
struct CoxelemsArgs {
    #[arg(long, required_unless_present = "file", conflicts_with = "file")]
    spec: Option<String>,
    /// Coxeter matrix file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Also list every Coxeter element with its decomposition.
    #[arg(long)]
    list: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct UniversalArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    output: Output,
}

/// Error carrying its exit code.
struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(2, e.to_string())
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Element(a) => cmd_element(a),
        Command::Coxelems(a) => cmd_coxelems(a),
        Command::Universal(a) => cmd_universal(a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn emit(output: &Output, text: String) -> Result<(), Failure> {
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure(2, format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn no_csv(output: &Output) -> Result<(), Failure> {
    if output.format == Format::Csv {
        return Err(Failure(2, "csv output is only available for verify".into()));
    }
    Ok(())
}

fn sweep_options(workers: Option<usize>, order_guard: Option<usize>) -> Result<SweepOptions, Failure> {
    let mut opts = SweepOptions::from_env();
    if let Some(w) = workers {
        if w == 0 {
            return Err(Failure(2, "--workers must be positive".into()));
        }
        opts.workers = Some(w);
    }
    if let Some(g) = order_guard {
        opts.order_guard = g;
    }
    Ok(opts)
}

fn cmd_verify(a: VerifyArgs) -> Result<u8, Failure> {
    let mut specs: Vec<SystemSpec> = Vec::new();
    if let Some(p) = &a.preset {
        specs.extend(verify::preset(p)?);
    }
    for s in &a.specs {
        specs.push(parse_spec(s)?);
    }
    if specs.is_empty() {
        return Err(Failure(2, "nothing to verify: give --spec or --preset".into()));
    }
    let opts = sweep_options(a.workers, a.order_guard)?;
    let reports = verify::sweep(&specs, &opts);
    let text = match a.output.format {
        Format::Json => to_json(&reports) + "\n",
        Format::Csv => reports_to_csv(&reports),
        Format::Text => reports_to_text(&reports),
    };
    emit(&a.output, text)?;
    for r in reports.iter().filter_map(|r| r.failure.as_ref().map(|f| (&r.spec, f))) {
        eprintln!("error: {}: {}", r.0, r.1);
    }
    Ok(if reports.iter().any(|r| r.failure.is_some()) {
        2
    } else if reports.iter().all(|r| r.passed()) {
        0
    } else {
        1
    })
}

fn cmd_element(a: ElementArgs) -> Result<u8, Failure> {
    no_csv(&a.output)?;
    let spec = parse_spec(&a.spec)?;
    let word: Word = a
        .word
        .parse()
        .map_err(|_| Failure(2, format!("bad word `{}`: expected comma-separated generator indices", a.word)))?;
    let opts = sweep_options(None, a.order_guard)?;
    let t = GroupTable::from_spec(&spec, opts.order_guard)?;
    let report = ElementReport::new(&spec, &t, &word)?;
    let text = match a.output.format {
        Format::Json => to_json(&report) + "\n",
        _ => report.to_text(),
    };
    emit(&a.output, text)?;
    Ok(0)
}

fn cmd_coxelems(a: CoxelemsArgs) -> Result<u8, Failure> {
    no_csv(&a.output)?;
    let descriptor = match (&a.spec, &a.file) {
        (Some(s), _) => s.clone(),
        (None, Some(f)) => format!("file:{}", f.display()),
        (None, None) => unreachable!("clap requires one of --spec and --file"),
    };
    let spec = parse_spec(&descriptor)?;
    let report = CoxElemReport::new(&spec, a.list)?;
    let text = match a.output.format {
        Format::Json => to_json(&report) + "\n",
        _ => report.to_text(),
    };
    emit(&a.output, text)?;
    Ok(0)
}

fn cmd_universal(a: UniversalArgs) -> Result<u8, Failure> {
    no_csv(&a.output)?;
    if a.n == 0 {
        return Err(Failure(2, "--n must be at least 1".into()));
    }
    let report = UniversalReport::new(a.n, a.k)?;
    let text = match a.output.format {
        Format::Json => to_json(&report) + "\n",
        _ => report.to_text(),
    };
    emit(&a.output, text)?;
    Ok(0)
}
