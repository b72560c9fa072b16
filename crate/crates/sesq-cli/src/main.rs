//! `sesq`: checks and constructions for 2-cell structures.
//!
//! Every subcommand except `build` reads a `.sesq` file, runs one
//! analysis, and prints findings.  Exit codes follow one rule: 0 when
//! the analysis ran and found nothing, 1 when it ran and found
//! violations, 2 when the input could not be used (I/O, parse,
//! resolution, or usage errors).

mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use sesq_core::algebra::presets;
use sesq_core::cellstruct::{validate_structure, Cell, TwoCellStructure};
use sesq_core::fincat::validate_category;
use sesq_core::naturality;
use sesq_core::naturalize::naturalize;
use sesq_core::pseudocat::{check_pseudocategory, CheckMode};
use sesq_core::report::Finding;
use sesq_dsl::ast::{Block, DeriveDirective, KeyRow, Span};
use sesq_dsl::{elaborate, emit, parse, serialize, Model, SpecDocument};

use output::{Format, Output};

#[derive(Parser)]
#[command(name = "sesq", version, about = "Checks and constructions for 2-cell structures")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Findings format; json-lines keeps stdout machine-readable.
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,
    /// Cap on printed findings (the exit code still sees all of them).
    #[arg(long, global = true, default_value_t = 100)]
    max_findings: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate the category and 2-cell tables of a file.
    Check { file: PathBuf },
    /// Test one cell for naturality against every probe cell.
    Natural {
        file: PathBuf,
        /// Name of the cell to test.
        #[arg(long)]
        cell: String,
    },
    /// Test whether every composable cell pair satisfies naturality.
    TwoCategory { file: PathBuf },
    /// List the nonzero commutators of an invertible structure.
    Commutators { file: PathBuf },
    /// Quotient the structure by naturality and write it canonically.
    Naturalize {
        file: PathBuf,
        /// Output path for the quotient.
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Check that the structure preserves the base category's pullbacks.
    Cartesian { file: PathBuf },
    /// Check the coherence equations of the file's pseudocat data.
    Pseudocat {
        file: PathBuf,
        /// Whether unit cells may be assumed natural.
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Write a file that derives a structure from named presets.
    Build {
        /// One of: conjugation, derivations, homotopies, internal,
        /// group-pseudocat, additive-pseudocat.
        builder: String,
        /// Preset names (and, for group-pseudocat, the chosen element).
        args: Vec<String>,
        /// Output path.
        #[arg(short, long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Natural,
    NonNatural,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Output::new(cli.format, cli.max_findings);
    match run(cli.cmd, &mut out) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd, out: &mut Output) -> Result<bool> {
    match cmd {
        Cmd::Check { file } => check(&file, out),
        Cmd::Natural { file, cell } => natural(&file, &cell, out),
        Cmd::TwoCategory { file } => two_category(&file, out),
        Cmd::Commutators { file } => commutators(&file, out),
        Cmd::Naturalize { file, out: dest } => run_naturalize(&file, &dest, out),
        Cmd::Cartesian { file } => cartesian(&file, out),
        Cmd::Pseudocat { file, mode } => pseudocat(&file, mode, out),
        Cmd::Build { builder, args, out: dest } => build(&builder, &args, &dest, out),
    }
}

/// Reads and resolves a file; diagnostics go to stderr and the command
/// exits 2 through the returned error.
fn load(path: &Path) -> Result<Model> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let doc = parse(&text).map_err(|ds| diagnostics_failure(path, ds))?;
    elaborate(&doc).map_err(|ds| diagnostics_failure(path, ds))
}

fn diagnostics_failure(path: &Path, ds: Vec<sesq_dsl::Diagnostic>) -> anyhow::Error {
    for d in &ds {
        eprintln!("{}:{d}", path.display());
    }
    anyhow!("{} problem(s) in {}", ds.len(), path.display())
}

fn structure(m: &Model) -> Result<&TwoCellStructure> {
    m.structure
        .as_ref()
        .ok_or_else(|| anyhow!("the file defines no 2-cell structure"))
}

fn cell_by_name(h: &TwoCellStructure, name: &str) -> Result<Cell> {
    let table = h
        .table()
        .map_err(|_| anyhow!("cell lookup by name needs an enumerated structure"))?;
    let i = table
        .names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| anyhow!("unknown cell `{name}` ({} cells defined)", table.names.len()))?;
    Ok(h.cell(i)?)
}

fn check(file: &Path, out: &mut Output) -> Result<bool> {
    let m = load(file)?;
    let mut total = 0;
    if let Some(cat) = &m.cat {
        let r = validate_category(cat);
        total += r.findings.len();
        out.report(&r);
    }
    if let Some(h) = &m.structure {
        let r = validate_structure(h)?;
        total += r.findings.len();
        out.report(&r);
    }
    out.summary(total);
    Ok(total > 0)
}

fn natural(file: &Path, cell: &str, out: &mut Output) -> Result<bool> {
    let m = load(file)?;
    let h = structure(&m)?;
    let x = cell_by_name(h, cell)?;
    match naturality::naturality_counterexample(h, &x)? {
        None => {
            out.note(&format!("{cell}: natural"));
            out.summary(0);
            Ok(false)
        }
        Some(z) => {
            let z_name = h.cell_name(&z);
            out.finding(&Finding::error(
                "naturality",
                vec![cell.to_string(), z_name.clone()],
                format!("{cell} is not natural with respect to {z_name}"),
            ));
            out.note(&format!("{cell}: not natural"));
            out.summary(1);
            Ok(true)
        }
    }
}

fn two_category(file: &Path, out: &mut Output) -> Result<bool> {
    let m = load(file)?;
    let h = structure(&m)?;
    let pairs = naturality::failing_pairs(h)?;
    for (x, z) in &pairs {
        let (xn, zn) = (h.cell_name(x), h.cell_name(z));
        out.finding(&Finding::error(
            "naturality",
            vec![xn.clone(), zn.clone()],
            format!("{xn} is not natural with respect to {zn}"),
        ));
    }
    out.note(&format!(
        "2-category: {}",
        if pairs.is_empty() { "yes" } else { "no" }
    ));
    out.note(&format!("failing pairs: {}", pairs.len()));
    out.summary(pairs.len());
    Ok(!pairs.is_empty())
}

fn commutators(file: &Path, out: &mut Output) -> Result<bool> {
    let m = load(file)?;
    let h = structure(&m)?;
    if !h.is_invertible_structure()? {
        bail!("commutators need every cell invertible under +");
    }
    let cells = h.all_cells()?;
    let mut total = 0;
    for x in &cells {
        for y in &cells {
            if y.dst != x.src {
                continue;
            }
            let c = naturality::commutator(h, x, y)?;
            if c == h.zero(h.dom(&c)?)? {
                continue;
            }
            total += 1;
            let (xn, yn) = (h.cell_name(x), h.cell_name(y));
            out.finding(&Finding::error(
                "commutator-nonzero",
                vec![xn.clone(), yn.clone(), h.cell_name(&c)],
                format!("[{xn}, {yn}] = {}", h.cell_name(&c)),
            ));
        }
    }
    out.note(&format!("nonzero commutators: {total}"));
    out.summary(total);
    Ok(total > 0)
}

fn run_naturalize(file: &Path, dest: &Path, out: &mut Output) -> Result<bool> {
    let m = load(file)?;
    let h = structure(&m)?;
    let (q, _classes) = naturalize(h)?;
    let doc = emit::structure_document(&q)?;
    fs::write(dest, serialize(&doc))
        .with_context(|| format!("cannot write {}", dest.display()))?;
    out.note(&format!(
        "naturalization has {} cells; wrote {}",
        q.all_cells()?.len(),
        dest.display()
    ));
    Ok(false)
}

fn cartesian(file: &Path, out: &mut Output) -> Result<bool> {
    let m = load(file)?;
    let h = structure(&m)?;
    let r = sesq_core::cartesian::is_cartesian(h)?;
    out.report(&r);
    out.note(&format!(
        "cartesian: {}",
        if r.ok() { "yes" } else { "no" }
    ));
    out.summary(r.findings.len());
    Ok(!r.ok())
}

fn pseudocat(file: &Path, mode: Mode, out: &mut Output) -> Result<bool> {
    let m = load(file)?;
    let h = structure(&m)?;
    let data = m
        .pseudo
        .as_ref()
        .ok_or_else(|| anyhow!("the file carries no pseudocat data"))?;
    let mode = match mode {
        Mode::Natural => CheckMode::Natural,
        Mode::NonNatural => CheckMode::NonNatural,
    };
    let r = check_pseudocategory(h, data, mode, &[])?;
    out.report(&r);
    out.summary(r.findings.len());
    Ok(!r.ok())
}

fn build(builder: &str, args: &[String], dest: &Path, out: &mut Output) -> Result<bool> {
    let doc = build_document(builder, args)?;
    let text = serialize(&doc);
    // The file must resolve on its own before it is worth writing.
    let reparsed = parse(&text).map_err(|ds| diagnostics_failure(dest, ds))?;
    elaborate(&reparsed).map_err(|ds| diagnostics_failure(dest, ds))?;
    fs::write(dest, &text).with_context(|| format!("cannot write {}", dest.display()))?;
    out.note(&format!("wrote {}", dest.display()));
    Ok(false)
}

fn derive_directive(builder: &str, args: &[String], rows: Vec<KeyRow>) -> Block {
    Block::Derive(DeriveDirective {
        span: Span::default(),
        builder: builder.into(),
        args: args.to_vec(),
        rows,
    })
}

fn build_document(builder: &str, args: &[String]) -> Result<SpecDocument> {
    let mut blocks = Vec::new();
    match builder {
        "conjugation" => {
            require_args(builder, args, 1, usize::MAX)?;
            for name in distinct(args) {
                let g = presets::group_by_name(name)
                    .ok_or_else(|| unknown_preset("group", name, "z1..z6, s3, d4, q8, v4"))?;
                blocks.push(emit::group_block(name, &g));
            }
            blocks.push(derive_directive("conjugation", args, Vec::new()));
        }
        "derivations" => {
            require_args(builder, args, 1, usize::MAX)?;
            for name in distinct(args) {
                let x = presets::xmod_by_name(name)
                    .ok_or_else(|| unknown_preset("xmod", name, "z2triv, z3inv"))?;
                blocks.extend(emit::xmod_blocks(name, &x));
            }
            blocks.push(derive_directive("derivations", args, Vec::new()));
        }
        "homotopies" => {
            require_args(builder, args, 1, usize::MAX)?;
            for name in distinct(args) {
                let c = presets::complex_by_name(name)
                    .ok_or_else(|| unknown_preset("complex", name, "f3, z4dbl, zero"))?;
                blocks.extend(emit::complex_blocks(name, &c));
            }
            blocks.push(derive_directive("homotopies", args, Vec::new()));
        }
        "internal" => {
            require_args(builder, args, 1, usize::MAX)?;
            for name in distinct(args) {
                let ic = presets::intcat_by_name(name)
                    .ok_or_else(|| unknown_preset("intcat", name, "z2loop, arrow"))?;
                blocks.push(emit::intcat_block(name, &ic));
            }
            blocks.push(derive_directive("internal", args, Vec::new()));
        }
        "group-pseudocat" => {
            require_args(builder, args, 2, 2)?;
            let name = args[0].as_str();
            let x = presets::xmod_by_name(name)
                .ok_or_else(|| unknown_preset("xmod", name, "z2triv, z3inv"))?;
            blocks.extend(emit::xmod_blocks(name, &x));
            blocks.push(derive_directive("group_pseudocat", args, Vec::new()));
        }
        "additive-pseudocat" => {
            require_args(builder, args, 2, 2)?;
            // Distinct block names keep `a = b` usable; every map row is
            // left out, so the derived homotopies are zero.
            for (block_name, preset) in [("a", &args[0]), ("b", &args[1])] {
                let c = presets::complex_by_name(preset)
                    .ok_or_else(|| unknown_preset("complex", preset, "f3, z4dbl, zero"))?;
                blocks.extend(emit::complex_blocks(block_name, &c));
            }
            let rows = vec![key_row("a", &["a"]), key_row("b", &["b"])];
            blocks.push(derive_directive("additive_pseudocat", &[], rows));
        }
        other => bail!(
            "unknown builder `{other}`; expected conjugation, derivations, homotopies, \
             internal, group-pseudocat, or additive-pseudocat"
        ),
    }
    Ok(SpecDocument { blocks })
}

fn key_row(key: &str, values: &[&str]) -> KeyRow {
    KeyRow {
        span: Span::default(),
        key: key.into(),
        values: values.iter().map(|s| s.to_string()).collect(),
    }
}

fn distinct(args: &[String]) -> Vec<&str> {
    let mut seen = Vec::new();
    for a in args {
        if !seen.contains(&a.as_str()) {
            seen.push(a.as_str());
        }
    }
    seen
}

fn require_args(builder: &str, args: &[String], min: usize, max: usize) -> Result<()> {
    if args.len() < min || args.len() > max {
        if min == max {
            bail!("builder `{builder}` takes exactly {min} argument(s), got {}", args.len());
        }
        bail!("builder `{builder}` takes at least {min} argument(s), got {}", args.len());
    }
    Ok(())
}

fn unknown_preset(kind: &str, name: &str, valid: &str) -> anyhow::Error {
    anyhow!("unknown {kind} preset `{name}`; available: {valid}")
}
