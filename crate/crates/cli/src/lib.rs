//! `seqforge` command-line front end.
//!
//! Exit codes: 0 success or property holds, 1 property violated, 2 usage or
//! input error.

pub mod format;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use seqforge_core::constructions::{
    ccc_codes, circulant_hadamard4, czcs_matrix, czcss_codes, enumerate_chm4, gcs_circulant,
    gcs_truncated, hadamard_2n, CzcsParams, DoublingVariant,
};
use seqforge_core::corrcore::SequenceMatrix;
use seqforge_core::profile::{auto_profile, cross_profile};
use seqforge_core::verify::{
    classify_gcs, czcs_max_zone, is_ccc, is_czcss, is_gcp, is_gcs, is_hadamard, is_mate,
    lemma_conformance, GcsClass, VerifyReport,
};

use format::{profile_csv, to_text, CodeSetFile, Document, MatrixFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Seed used by `conformance` when neither `--seed` nor the environment gives one.
pub const DEFAULT_SEED: u64 = 1;
pub const SEED_ENV: &str = "SEQFORGE_SEED";

/// Largest matrix order `gen` will build.
const MAX_MATRIX_ORDER: usize = 1024;
/// Largest code count (= code order) `gen` will build for code sets.
const MAX_CODE_ORDER: usize = 128;

#[derive(Debug, Parser)]
#[command(
    name = "seqforge",
    version,
    about = "Complementary sequence and Hadamard matrix toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a matrix or code set and write it as JSON or text.
    Gen(GenArgs),
    /// Check a property of a matrix or code-set file.
    Verify(VerifyArgs),
    /// Write correlation profiles as CSV.
    Profile(ProfileArgs),
    /// Run randomized conformance checks of the correlation identities.
    Conformance(ConformanceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Chm4,
    Chm4All,
    Czcs,
    GcsRecursive,
    GcsCirculant,
    Hadamard,
    Ccc,
    Czcss,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct GenArgs {
    kind: Kind,
    /// Phase modulus for chm4.
    #[arg(long, default_value_t = 2)]
    q: u32,
    /// θ1,θ2,θ3 for chm4.
    #[arg(long, value_delimiter = ',', default_values_t = [1, 1, 1])]
    theta: Vec<u32>,
    /// Doubling depth; the order is 2^(n+2).
    #[arg(long)]
    n: Option<u32>,
    /// Number of trailing columns to remove.
    #[arg(long, default_value_t = 0)]
    k: usize,
    /// Golay pair length N = 2^a 10^b 26^c.
    #[arg(long = "N")]
    big_n: Option<usize>,
    /// Sign pattern of the outermost doubling step: F, G, H or I.
    #[arg(long, default_value = "F")]
    variant: String,
    /// θ1,θ2,θ3 of the order-4 seed for doubling constructions.
    #[arg(long = "e4-theta", value_delimiter = ',', default_values_t = [1, 1, 1])]
    e4_theta: Vec<u32>,
    /// Phase modulus of the order-4 seed.
    #[arg(long = "e4-q", default_value_t = 2)]
    e4_q: u32,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PropertyArg {
    Hadamard,
    Gcs,
    Gcp,
    Mate,
    Czcs,
    Ccc,
    Czcss,
    Classify,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    property: PropertyArg,
    input: PathBuf,
    /// Zone width: a lower bound for czcs, required for czcss.
    #[arg(long = "Z")]
    z: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProfileMode {
    Auto,
    Cross,
}

#[derive(Debug, Args)]
struct ProfileArgs {
    mode: ProfileMode,
    input: PathBuf,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ConformanceArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [4u8, 5, 6, 7, 8, 9, 10])]
    lemmas: Vec<u8>,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Overrides SEQFORGE_SEED.
    #[arg(long)]
    seed: Option<u64>,
    /// Also write the full reports as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

type CmdResult = Result<i32, String>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = if e.use_stderr() {
                e.render().to_string()
            } else {
                e.to_string()
            };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(&a, out, err),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Profile(a) => cmd_profile(&a, out),
        Command::Conformance(a) => cmd_conformance(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn io<E: std::fmt::Display>(what: &Path) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{}: {e}", what.display())
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), String> {
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())
}

fn lib_err(e: seqforge_core::Error) -> String {
    e.to_string()
}

enum Product {
    Matrix(SequenceMatrix),
    Codes(CodeSetFile),
}

fn seed_matrix(a: &GenArgs) -> Result<SequenceMatrix, String> {
    let [t1, t2, t3] = three(&a.e4_theta, "--e4-theta")?;
    circulant_hadamard4(a.e4_q, t1, t2, t3).map_err(lib_err)
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: &str) -> Result<T, String> {
    v.ok_or_else(|| format!("gen {kind} needs {flag}"))
}

fn check_order(order: usize, limit: usize, what: &str) -> Result<(), String> {
    if order > limit {
        return Err(format!(
            "{what} of order {order} exceeds the limit of {limit}"
        ));
    }
    Ok(())
}

fn doubling_order(n: u32) -> Result<usize, String> {
    if !(1..=20).contains(&n) {
        return Err(format!("doubling depth n = {n} is outside [1, 20]"));
    }
    Ok(1usize << (n + 2))
}

fn three(v: &[u32], flag: &str) -> Result<[u32; 3], String> {
    v.try_into().map_err(|_| {
        format!(
            "{flag} takes exactly three values θ1,θ2,θ3, got {}",
            v.len()
        )
    })
}

fn build(a: &GenArgs) -> Result<(Product, String), String> {
    let variant: DoublingVariant = a.variant.parse().map_err(lib_err)?;
    Ok(match a.kind {
        Kind::Chm4 => {
            let [t1, t2, t3] = three(&a.theta, "--theta")?;
            let m = circulant_hadamard4(a.q, t1, t2, t3).map_err(lib_err)?;
            (
                Product::Matrix(m),
                "(4,4)-GCS, circulant Hadamard of order 4".into(),
            )
        }
        Kind::Chm4All => {
            let all = enumerate_chm4();
            (
                Product::Codes(CodeSetFile::from_matrices(2, &all)),
                format!("{} circulant Hadamard matrices of order 4", all.len()),
            )
        }
        Kind::Czcs => {
            let n = need(a.n, "--n", "czcs")?;
            check_order(doubling_order(n)?, MAX_MATRIX_ORDER, "matrix")?;
            let (m, claim) = czcs_matrix(n, a.k, variant, &seed_matrix(a)?).map_err(lib_err)?;
            (Product::Matrix(m), claim.to_string())
        }
        Kind::GcsRecursive => {
            let n = need(a.n, "--n", "gcs-recursive")?;
            check_order(doubling_order(n)?, MAX_MATRIX_ORDER, "matrix")?;
            let m = gcs_truncated(&seed_matrix(a)?, n, a.k, variant).map_err(lib_err)?;
            let label = format!("({},{})-GCS", m.n_rows(), m.n_cols());
            (Product::Matrix(m), label)
        }
        Kind::GcsCirculant => {
            let big_n = need(a.big_n, "--N", "gcs-circulant")?;
            check_order(2 * big_n, MAX_MATRIX_ORDER, "matrix")?;
            let m = gcs_circulant(big_n, a.k).map_err(lib_err)?;
            let label = format!("({},{})-GCS", m.n_rows(), m.n_cols());
            (Product::Matrix(m), label)
        }
        Kind::Hadamard => {
            let big_n = need(a.big_n, "--N", "hadamard")?;
            check_order(2 * big_n, MAX_MATRIX_ORDER, "matrix")?;
            let m = hadamard_2n(big_n).map_err(lib_err)?;
            let label = format!("({0},{0})-GCS, Hadamard of order {0}", m.n_rows());
            (Product::Matrix(m), label)
        }
        Kind::Ccc => {
            let big_n = need(a.big_n, "--N", "ccc")?;
            check_order(2 * big_n, MAX_CODE_ORDER, "code set")?;
            let codes = ccc_codes(&hadamard_2n(big_n).map_err(lib_err)?).map_err(lib_err)?;
            let (n, m, l) = codes.shape();
            (
                Product::Codes(CodeSetFile::from_codes(&codes)),
                format!("({n},{m},{l})-CCC"),
            )
        }
        Kind::Czcss => {
            let n = need(a.n, "--n", "czcss")?;
            check_order(doubling_order(n)?, MAX_CODE_ORDER, "code set")?;
            let codes = czcss_codes(&seed_matrix(a)?, n, variant).map_err(lib_err)?;
            let (big_n, m, l) = codes.shape();
            let z = CzcsParams::claimed(n, 0).z;
            (
                Product::Codes(CodeSetFile::from_codes(&codes)),
                format!("({big_n},{m},{l},{z})-CZCSS"),
            )
        }
    })
}

fn render(product: &Product, fmt: OutputFormat) -> Result<String, String> {
    match (product, fmt) {
        (Product::Matrix(m), OutputFormat::Json) => Ok(serde_json::to_string(
            &MatrixFile::from_matrix(m),
        )
        .map_err(|e| e.to_string())?
            + "\n"),
        (Product::Codes(c), OutputFormat::Json) => {
            Ok(serde_json::to_string(c).map_err(|e| e.to_string())? + "\n")
        }
        (Product::Matrix(m), OutputFormat::Text) => to_text(m),
        (Product::Codes(_), OutputFormat::Text) => {
            Err("text export is available for single matrices only".into())
        }
    }
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let (product, label) = build(a)?;
    let text = render(&product, a.format)?;
    match &a.out {
        Some(path) => {
            fs::write(path, text).map_err(io(path))?;
            emit(out, &format!("{label}\n"))?;
        }
        None => {
            emit(out, &text)?;
            emit(err, &format!("{label}\n"))?;
        }
    }
    Ok(EXIT_OK)
}

fn read_document(path: &Path) -> Result<Document, String> {
    let text = fs::read_to_string(path).map_err(io(path))?;
    Document::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

#[derive(Serialize)]
struct Classification {
    property: &'static str,
    class: GcsClass,
}

fn print_report(out: &mut dyn Write, r: &VerifyReport) -> CmdResult {
    let json = serde_json::to_string_pretty(r).map_err(|e| e.to_string())?;
    emit(out, &format!("{json}\n"))?;
    Ok(if r.holds { EXIT_OK } else { EXIT_VIOLATED })
}

fn rows_exactly(m: &SequenceMatrix, n: usize, what: &str) -> Result<(), String> {
    if m.n_rows() != n {
        return Err(format!(
            "{what} needs a {n}-row matrix, got {} rows",
            m.n_rows()
        ));
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let doc = read_document(&a.input)?;
    let report = match a.property {
        PropertyArg::Hadamard => is_hadamard(&doc.into_matrix()?).map_err(lib_err)?,
        PropertyArg::Gcs => is_gcs(&doc.into_matrix()?),
        PropertyArg::Gcp => {
            let m = doc.into_matrix()?;
            rows_exactly(&m, 2, "gcp")?;
            is_gcp(m.row(0), m.row(1)).map_err(lib_err)?
        }
        PropertyArg::Mate => {
            let m = doc.into_matrix()?;
            rows_exactly(&m, 4, "mate (rows a, b, c, d)")?;
            is_mate((m.row(0), m.row(1)), (m.row(2), m.row(3))).map_err(lib_err)?
        }
        PropertyArg::Czcs => czcs_max_zone(&doc.into_matrix()?, a.z),
        PropertyArg::Ccc => is_ccc(&doc.into_codes()?).map_err(lib_err)?,
        PropertyArg::Czcss => {
            let z = a.z.ok_or("verify czcss needs --Z")?;
            is_czcss(&doc.into_codes()?, z).map_err(lib_err)?
        }
        PropertyArg::Classify => {
            let class = classify_gcs(&doc.into_matrix()?).map_err(lib_err)?;
            let c = Classification {
                property: "classify",
                class,
            };
            let json = serde_json::to_string_pretty(&c).map_err(|e| e.to_string())?;
            emit(out, &format!("{json}\n"))?;
            return Ok(EXIT_OK);
        }
    };
    print_report(out, &report)
}

fn cmd_profile(a: &ProfileArgs, out: &mut dyn Write) -> CmdResult {
    let doc = read_document(&a.input)?;
    let rows = match (a.mode, doc) {
        (ProfileMode::Auto, Document::Matrix(m)) => auto_profile(&[m]),
        (ProfileMode::Auto, Document::Codes(c)) => auto_profile(&c),
        (ProfileMode::Cross, doc) => cross_profile(&doc.into_codes()?).map_err(lib_err)?,
    };
    let csv = profile_csv(&rows);
    match &a.out {
        Some(path) => fs::write(path, csv).map_err(io(path))?,
        None => emit(out, &csv)?,
    }
    Ok(EXIT_OK)
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, String> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{SEED_ENV}={v:?} is not an unsigned integer")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn cmd_conformance(a: &ConformanceArgs, out: &mut dyn Write) -> CmdResult {
    let seed = resolve_seed(a.seed)?;
    let mut reports = Vec::new();
    for &id in &a.lemmas {
        reports.push(lemma_conformance(id, a.trials, seed).map_err(lib_err)?);
    }

    let mut table = format!("seed {seed}, {} trials per identity\n", a.trials);
    table.push_str(&format!(
        "{:<6} {:<22} {:>12} {:>12} {:>9}  {}\n",
        "lemma", "formula", "agreements", "checks", "rate", "role"
    ));
    for r in &reports {
        for f in &r.formulas {
            let role = match (f.name == r.reference, r.asserted) {
                (true, true) => "asserted",
                (true, false) => "reference",
                (false, _) => "reported",
            };
            table.push_str(&format!(
                "{:<6} {:<22} {:>12} {:>12} {:>8.4}%  {role}\n",
                r.lemma,
                f.name,
                f.agreements,
                f.checks,
                100.0 * f.agreement_rate()
            ));
        }
        if r.path_mismatches > 0 {
            table.push_str(&format!(
                "{:<6} exact and floating paths disagreed {} times\n",
                r.lemma, r.path_mismatches
            ));
        }
    }
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passes())
        .map(|r| r.lemma.to_string())
        .collect();
    if failed.is_empty() {
        table.push_str("all asserted identities hold\n");
    } else {
        table.push_str(&format!(
            "asserted identities failed: {}\n",
            failed.join(", ")
        ));
    }
    emit(out, &table)?;

    if let Some(path) = &a.json {
        let json = serde_json::to_string_pretty(&reports).map_err(|e| e.to_string())?;
        fs::write(path, json + "\n").map_err(io(path))?;
    }
    Ok(if failed.is_empty() {
        EXIT_OK
    } else {
        EXIT_VIOLATED
    })
}
