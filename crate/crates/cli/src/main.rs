//! `mincode` — construct, check, and search minimal linear codes over GF(q).
//!
//! Subcommands:
//!   field-info    canonical field construction for a prime power
//!   construct     emit a named defining-set construction
//!   check         run a minimality checker on a defining-set file
//!   weights       exact weight distribution of a code
//!   bounds        the theoretical window for the threshold length n(k;q)
//!   search        exact value or bracket for n(k;q), with certificates
//!   extend        pad a defining set to a longer length
//!   selftest      cross-validate all checkers on a seeded random corpus
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 budget exhausted.
//! Structured output (`--format structured`) is byte-deterministic; text
//! output adds wall-clock timings.

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mincode::codes::{
    defining_set_to_string, parse_field_order, read_defining_set, write_defining_set, DefiningSet,
    ParseError,
};
use mincode::constructions::{construct, ConstructionParams, Family, Padding};
use mincode::corpus::{self, CorpusParams};
use mincode::gf::FieldSpec;
use mincode::minimality::{
    check_ab, check_brute_jobs, check_dhz, check_span_jobs, counting_identity, MinimalityError,
    MinimalityVerdict, Verdict, Witness,
};
use mincode::search::{bounds, n_min, SearchConfig, SearchReport, SearchStatus};

const EXIT_DOMAIN: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "mincode", version, about = "Minimal linear codes over GF(q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Show the canonical construction of GF(q).
    FieldInfo(FieldInfoArgs),
    /// Emit a named defining-set construction in the code file format.
    Construct(ConstructArgs),
    /// Decide minimality of the code defined by a file (or stdin).
    Check(CheckArgs),
    /// Exact weight distribution of the code defined by a file.
    Weights(WeightsArgs),
    /// Theoretical bounds on the threshold length n(k;q).
    Bounds(BoundsArgs),
    /// Search for n(k;q): exact value with certificates, or a bracket.
    Search(SearchArgs),
    /// Pad a defining set to a target length.
    Extend(ExtendArgs),
    /// Cross-validate all four checkers on a seeded random corpus.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args)]
struct FieldInfoArgs {
    /// Field order, as a prime power ("9") or explicit "p^m" ("3^2").
    #[arg(long)]
    q: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct ConstructArgs {
    /// Construction family: full, d0, d1, d2, d3, d4.
    #[arg(long)]
    family: String,
    /// Code dimension k.
    #[arg(long)]
    k: usize,
    /// Field order.
    #[arg(long)]
    q: String,
    /// Split parameter for d1-d4 (requires k/2 < t < k).
    #[arg(long)]
    t: Option<usize>,
    /// Prepend a comment header describing the construction.
    #[arg(long)]
    manifest: bool,
    /// Output path (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Span,
    Dhz,
    Brute,
    Ab,
    All,
}

#[derive(Args)]
struct CheckArgs {
    /// Checker to run; "all" runs every checker and cross-validates.
    #[arg(long, value_enum, default_value = "span")]
    method: MethodArg,
    /// Worker threads for the span and brute checkers.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Input file; stdin when absent or "-".
    input: Option<PathBuf>,
}

#[derive(Args)]
struct WeightsArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    input: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    q: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    q: String,
    /// Stop scanning at this length even if undecided.
    #[arg(long)]
    n_max: Option<usize>,
    /// Total backtracking-node budget for the scan.
    #[arg(long, default_value_t = mincode::search::DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads for the backtracking tree.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Disable deficit pruning (reference mode; same answers, more nodes).
    #[arg(long)]
    no_prune: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PaddingArg {
    RepeatLast,
    Cycle,
    FromFile,
}

#[derive(Args)]
struct ExtendArgs {
    /// Target length n.
    #[arg(long)]
    to: usize,
    #[arg(long, value_enum, default_value = "repeat-last")]
    padding: PaddingArg,
    /// Columns for --padding from-file, in the code file format.
    #[arg(long)]
    pad_file: Option<PathBuf>,
    /// Output path (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
    input: Option<PathBuf>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Corpus seed; fixed seeds reproduce the corpus exactly.
    #[arg(long, default_value_t = 0xC0DE5)]
    seed: u64,
    /// Minimum number of random codes.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// Any failure, tagged with the exit code it maps to.
struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn domain(message: impl Into<String>) -> CliError {
        CliError {
            message: message.into(),
            code: EXIT_DOMAIN,
        }
    }

    fn usage(message: impl Into<String>) -> CliError {
        CliError {
            message: message.into(),
            code: EXIT_USAGE,
        }
    }
}

macro_rules! domain_from {
    ($($ty:ty),+) => {$(
        impl From<$ty> for CliError {
            fn from(e: $ty) -> CliError {
                CliError::domain(e.to_string())
            }
        }
    )+};
}

domain_from!(
    ParseError,
    MinimalityError,
    mincode::gf::GfError,
    mincode::codes::CodesError,
    mincode::constructions::ConstructionError,
    mincode::search::SearchError,
    io::Error
);

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::FieldInfo(args) => field_info(args),
        Command::Construct(args) => run_construct(args),
        Command::Check(args) => run_check(args),
        Command::Weights(args) => run_weights(args),
        Command::Bounds(args) => run_bounds(args),
        Command::Search(args) => run_search(args),
        Command::Extend(args) => run_extend(args),
        Command::Selftest(args) => run_selftest(args),
    }
}

// ---- shared plumbing ----------------------------------------------------

fn read_input(path: &Option<PathBuf>) -> Result<DefiningSet, CliError> {
    let use_stdin = match path {
        None => true,
        Some(p) => p.as_os_str() == "-",
    };
    if use_stdin {
        let stdin = io::stdin();
        Ok(read_defining_set(stdin.lock())?)
    } else {
        let file = File::open(path.as_ref().unwrap())
            .map_err(|e| CliError::domain(format!("cannot open input: {e}")))?;
        Ok(read_defining_set(BufReader::new(file))?)
    }
}

fn write_output(path: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        None => {
            io::stdout().write_all(content.as_bytes())?;
            Ok(())
        }
        Some(p) => {
            let mut f = File::create(p)
                .map_err(|e| CliError::domain(format!("cannot create output: {e}")))?;
            f.write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

fn parse_field(q: &str) -> Result<Arc<FieldSpec>, CliError> {
    Ok(parse_field_order(q)?)
}

/// A printed record: `key=value` lines in a stable order.
fn emit(lines: &[(String, String)]) {
    let mut out = io::stdout().lock();
    for (k, v) in lines {
        let _ = writeln!(out, "{k}={v}");
    }
}

fn kv(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

// ---- subcommands ----------------------------------------------------------

fn field_info(args: FieldInfoArgs) -> Result<u8, CliError> {
    let field = parse_field(&args.q)?;
    let modulus = field
        .modulus()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    emit(&[
        kv("p", field.p()),
        kv("m", field.m()),
        kv("q", field.q()),
        kv("order", field.order_string()),
        kv("modulus", modulus),
        kv("modulus_poly", field.modulus_string()),
    ]);
    Ok(0)
}

fn run_construct(args: ConstructArgs) -> Result<u8, CliError> {
    let family: Family = args.family.parse().map_err(CliError::usage)?;
    if family.needs_split() && args.t.is_none() {
        return Err(CliError::usage(format!(
            "family {} requires --t",
            family.name()
        )));
    }
    if !family.needs_split() && args.t.is_some() {
        return Err(CliError::usage(format!(
            "family {} does not take --t",
            family.name()
        )));
    }
    let field = parse_field(&args.q)?;
    let params = ConstructionParams {
        family,
        k: args.k,
        t: args.t,
        field,
    };
    let (d, manifest) = construct(&params)?;
    let mut content = String::new();
    if args.manifest {
        for (key, value) in &manifest {
            content.push_str(&format!("# {key}={value}\n"));
        }
    }
    content.push_str(&defining_set_to_string(&d));
    write_output(&args.output, &content)?;
    Ok(0)
}

fn witness_lines(witness: &Witness, out: &mut Vec<(String, String)>) {
    match witness {
        Witness::DeficientHyperplane { y, dim_v } => {
            out.push(kv("witness.kind", "deficient_hyperplane"));
            out.push(kv("witness.y", y));
            out.push(kv("witness.dim_v", dim_v));
        }
        Witness::CoveringPair { x, y } => {
            out.push(kv("witness.kind", "covering_pair"));
            out.push(kv("witness.x", x));
            out.push(kv("witness.y", y));
        }
        Witness::WeightIdentity { a, b, lhs, rhs } => {
            out.push(kv("witness.kind", "weight_identity"));
            out.push(kv("witness.a", a));
            out.push(kv("witness.b", b));
            out.push(kv("witness.lhs", lhs));
            out.push(kv("witness.rhs", rhs));
        }
    }
}

fn verdict_record(v: &MinimalityVerdict, wall_ms: Option<u128>) -> Vec<(String, String)> {
    let mut out = vec![kv("method", v.method), kv("verdict", v.verdict)];
    if let Some(w) = &v.witness {
        witness_lines(w, &mut out);
    }
    for (key, value) in &v.detail {
        out.push(kv(key, value));
    }
    if v.work.hyperplanes > 0 {
        out.push(kv("work.hyperplanes", v.work.hyperplanes));
    }
    if v.work.pairs > 0 {
        out.push(kv("work.pairs", v.work.pairs));
    }
    if let Some(ms) = wall_ms {
        out.push(kv("wall_ms", ms));
    }
    out
}

fn run_check(args: CheckArgs) -> Result<u8, CliError> {
    let d = read_input(&args.input)?;
    let jobs = args.jobs.max(1);
    let timed = |f: &dyn Fn() -> Result<MinimalityVerdict, MinimalityError>|
     -> Result<(MinimalityVerdict, Option<u128>), MinimalityError> {
        let started = Instant::now();
        let v = f()?;
        let wall = (args.format == Format::Text).then(|| started.elapsed().as_millis());
        Ok((v, wall))
    };

    match args.method {
        MethodArg::Span => {
            let (v, wall) = timed(&|| check_span_jobs(&d, jobs))?;
            emit(&verdict_record(&v, wall));
        }
        MethodArg::Brute => {
            let (v, wall) = timed(&|| check_brute_jobs(&d, jobs))?;
            emit(&verdict_record(&v, wall));
        }
        MethodArg::Dhz => {
            let (v, wall) = timed(&|| check_dhz(&d))?;
            emit(&verdict_record(&v, wall));
        }
        MethodArg::Ab => {
            let (v, wall) = timed(&|| check_ab(&d))?;
            emit(&verdict_record(&v, wall));
        }
        MethodArg::All => {
            type Checker<'a> = Box<dyn Fn() -> Result<MinimalityVerdict, MinimalityError> + 'a>;
            let mut verdicts: Vec<MinimalityVerdict> = Vec::new();
            let mut first = true;
            let runs: Vec<(&str, Checker)> = vec![
                ("span", Box::new(|| check_span_jobs(&d, jobs))),
                ("dhz", Box::new(|| check_dhz(&d))),
                ("brute", Box::new(|| check_brute_jobs(&d, jobs))),
                ("ab", Box::new(|| check_ab(&d))),
            ];
            for (name, f) in runs {
                if !first {
                    println!();
                }
                first = false;
                match timed(&*f) {
                    Ok((v, wall)) => {
                        emit(&verdict_record(&v, wall));
                        verdicts.push(v);
                    }
                    Err(MinimalityError::EnumerationTooLarge { size, cap }) => {
                        emit(&[
                            kv("method", name),
                            kv("verdict", "skipped"),
                            kv("reason", format!("q^k = {size} exceeds cap {cap}")),
                        ]);
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            // The exact checkers must agree; AB may only confirm.
            let exact: Vec<&MinimalityVerdict> = verdicts
                .iter()
                .filter(|v| v.method != mincode::minimality::Method::Ab)
                .collect();
            if exact.windows(2).any(|w| w[0].verdict != w[1].verdict) {
                return Err(CliError::domain(
                    "checker disagreement: the exact methods returned different verdicts",
                ));
            }
            if let Some(ab) = verdicts
                .iter()
                .find(|v| v.method == mincode::minimality::Method::Ab)
            {
                if ab.verdict == Verdict::Minimal
                    && exact.iter().any(|v| v.verdict != Verdict::Minimal)
                {
                    return Err(CliError::domain(
                        "checker disagreement: AB claims minimal against an exact checker",
                    ));
                }
            }
        }
    }
    Ok(0)
}

fn run_weights(args: WeightsArgs) -> Result<u8, CliError> {
    let d = read_input(&args.input)?;
    let started = Instant::now();
    let wd = d.weight_distribution()?;
    let mut lines = vec![
        kv("q", wd.q()),
        kv("k", wd.k()),
        kv("n", wd.n()),
        kv("total", wd.total()),
        kv("w_min", wd.w_min().expect("full-rank code")),
        kv("w_max", wd.w_max().expect("full-rank code")),
    ];
    for (w, c) in wd.counts() {
        lines.push(kv(&format!("weight.{w}"), c));
    }
    if args.format == Format::Text {
        lines.push(kv("wall_ms", started.elapsed().as_millis()));
    }
    emit(&lines);
    Ok(0)
}

fn run_bounds(args: BoundsArgs) -> Result<u8, CliError> {
    if args.k < 1 {
        return Err(CliError::usage("--k must be at least 1"));
    }
    let field = parse_field(&args.q)?;
    let b = bounds(args.k, field.q());
    emit(&[
        kv("k", b.k),
        kv("q", b.q),
        kv("lower_exclusive", b.lower_exclusive),
        kv("upper_inclusive", b.upper_inclusive),
    ]);
    let _ = args.format; // both formats coincide: nothing timed or transient
    Ok(0)
}

fn search_record(report: &SearchReport, wall_ms: Option<u128>) -> String {
    let mut out = String::new();
    let mut push = |k: &str, v: String| {
        out.push_str(k);
        out.push('=');
        out.push_str(&v);
        out.push('\n');
    };
    push("k", report.k.to_string());
    push("q", report.q.to_string());
    push("lower_exclusive", report.bounds.lower_exclusive.to_string());
    push("upper_inclusive", report.bounds.upper_inclusive.to_string());
    let status = match report.status {
        SearchStatus::Exact => "exact",
        SearchStatus::Bracket => "bracket",
        SearchStatus::BudgetExhausted => "budget_exhausted",
    };
    push("status", status.to_string());
    if let Some(n) = report.n_min {
        push("n_min", n.to_string());
    }
    if let Some((lo, hi)) = report.bracket {
        push("bracket_lo_exclusive", lo.to_string());
        push("bracket_hi_inclusive", hi.to_string());
    }
    for (n, nodes) in &report.nonexistence {
        push(&format!("exhausted.{n}"), nodes.to_string());
    }
    push("budget", report.budget.to_string());
    push("budget_used", report.budget_used.to_string());
    if let Some(ms) = wall_ms {
        push("wall_ms", ms.to_string());
    }
    if let Some(w) = &report.witness {
        out.push_str("witness:\n");
        out.push_str(&defining_set_to_string(w));
    }
    out
}

fn run_search(args: SearchArgs) -> Result<u8, CliError> {
    if args.k < 1 {
        return Err(CliError::usage("--k must be at least 1"));
    }
    let field = parse_field(&args.q)?;
    let cfg = SearchConfig {
        budget: args.budget,
        prune: !args.no_prune,
        jobs: args.jobs.max(1),
        n_max: args.n_max,
    };
    let started = Instant::now();
    let report = n_min(args.k, &field, &cfg)?;
    let wall = (args.format == Format::Text).then(|| started.elapsed().as_millis());
    print!("{}", search_record(&report, wall));
    Ok(match report.status {
        SearchStatus::Exact => 0,
        _ => EXIT_BUDGET,
    })
}

fn run_extend(args: ExtendArgs) -> Result<u8, CliError> {
    let padding = match args.padding {
        PaddingArg::RepeatLast => {
            if args.pad_file.is_some() {
                return Err(CliError::usage("--pad-file requires --padding from-file"));
            }
            Padding::RepeatLast
        }
        PaddingArg::Cycle => {
            if args.pad_file.is_some() {
                return Err(CliError::usage("--pad-file requires --padding from-file"));
            }
            Padding::Cycle
        }
        PaddingArg::FromFile => {
            let path = args
                .pad_file
                .as_ref()
                .ok_or_else(|| CliError::usage("--padding from-file requires --pad-file"))?;
            let file = File::open(path)
                .map_err(|e| CliError::domain(format!("cannot open pad file: {e}")))?;
            let pad_set = read_defining_set(BufReader::new(file))?;
            Padding::Columns(pad_set.columns().to_vec())
        }
    };
    let d = read_input(&args.input)?;
    let extended = mincode::constructions::extend(&d, args.to, &padding)?;
    let mut content = Vec::new();
    write_defining_set(&extended, &mut content)?;
    write_output(&args.output, &String::from_utf8(content).expect("ascii"))?;
    Ok(0)
}

fn run_selftest(args: SelftestArgs) -> Result<u8, CliError> {
    let params = CorpusParams {
        seed: args.seed,
        samples: args.samples,
        ..Default::default()
    };
    let started = Instant::now();
    let sets = corpus::generate(&params);
    let mut minimal = 0usize;
    let mut mismatches = 0usize;
    for d in &sets {
        let span = check_span_jobs(d, 1)?;
        let brute = check_brute_jobs(d, 1)?;
        let dhz = check_dhz(d)?;
        let ab = check_ab(d)?;
        let agree = span.verdict == brute.verdict && span.verdict == dhz.verdict;
        let ab_sound = ab.verdict != Verdict::Minimal || span.verdict == Verdict::Minimal;
        let witnesses_ok =
            span.verify_witness(d) && brute.verify_witness(d) && dhz.verify_witness(d);
        let (lhs, rhs) = counting_identity(d)?;
        if !(agree && ab_sound && witnesses_ok && lhs == rhs) {
            mismatches += 1;
            eprintln!("selftest mismatch on {d:?}");
        }
        if span.verdict == Verdict::Minimal {
            minimal += 1;
        }
    }
    let mut lines = vec![
        kv("seed", params.seed),
        kv("samples", sets.len()),
        kv("minimal", minimal),
        kv("mismatches", mismatches),
        kv("status", if mismatches == 0 { "ok" } else { "failed" }),
    ];
    if args.format == Format::Text {
        lines.push(kv("wall_ms", started.elapsed().as_millis()));
    }
    emit(&lines);
    Ok(if mismatches == 0 { 0 } else { EXIT_DOMAIN })
}
