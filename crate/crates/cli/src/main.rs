use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nssd::catalog::{self, discrepancies, verify_all, verify_gamma, write_catalog_csv};
use nssd::constructions::{bridge_join, pendant_union, ConstructionResult};
use nssd::dihedral::format_subset;
use nssd::enumerate::{compare_with_published, enumerate_range, write_report, EnumerationOptions, ReportFormat};
use nssd::formats::{export_dot, export_graph6};
use nssd::hyperop::{check_reproduction, check_weak_associativity};
use nssd::{is_nssd, CommutingGraph, Error, HvGroupCtx};

/// Exact NSSD analysis of commuting graphs of the Hv-group (D_2n, o).
#[derive(Debug, Parser)]
#[command(name = "nssd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exhaustively check weak associativity and reproduction for D_2n.
    Axioms {
        #[arg(long)]
        n: u32,
    },
    /// Build the commuting graph of a subset and decide NSSD.
    Check {
        #[arg(long)]
        n: u32,
        /// Comma-separated elements, e.g. "a, a^3, b, a b".
        #[arg(long)]
        subset: String,
        /// Write the graph as DOT to this file.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        /// Also print the graph in graph6.
        #[arg(long)]
        graph6: bool,
    },
    /// Count NSSD subsets and isomorphism classes per order.
    Table(TableArgs),
    /// Apply the pendant-union or bridge-join construction to U and V.
    Construct {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Verify catalog vertex sets.
    Gamma(GammaArgs),
}

#[derive(Debug, Args)]
#[group(id = "which_n", required = true, multiple = false)]
struct NSelection {
    #[arg(long)]
    n: Option<u32>,
    /// Inclusive range, e.g. 2..8.
    #[arg(long, value_name = "A..B", value_parser = parse_range)]
    n_range: Option<RangeInclusive<u32>>,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[command(flatten)]
    which: NSelection,
    #[arg(long, default_value_t = 2)]
    min_order: usize,
    #[arg(long, default_value_t = 10)]
    max_order: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, env = "NSSD_WORKERS", value_parser = clap::value_parser!(u16).range(1..))]
    workers: Option<u16>,
    /// Count only connected commuting graphs.
    #[arg(long)]
    connected_only: bool,
    /// Compare against the published counts; exit 1 on any difference.
    #[arg(long = "expect-paper")]
    expect_published: bool,
}

#[derive(Debug, Args)]
#[group(id = "which_gamma", required = true, multiple = false)]
struct GammaSelection {
    #[arg(long)]
    id: Option<u32>,
    #[arg(long)]
    all: bool,
}

#[derive(Debug, Args)]
struct GammaArgs {
    #[command(flatten)]
    which: GammaSelection,
    #[arg(long, value_name = "FILE", conflicts_with = "all")]
    dot: Option<PathBuf>,
    #[arg(long, conflicts_with = "all")]
    graph6: bool,
    #[arg(long, value_enum, conflicts_with = "id")]
    format: Option<CatalogFormat>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Pendant,
    Bridge,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CatalogFormat {
    Text,
    Csv,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: u32 = a.trim().parse().map_err(|_| format!("bad range start {a:?}"))?;
    let b: u32 = b.trim().parse().map_err(|_| format!("bad range end {b:?}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

/// How a subcommand ended, short of an input error.
enum Verdict {
    Ok,
    Mismatch,
}

enum Failure {
    Input(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<Verdict, Failure>;

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|source| {
        Failure::Input(Error::Io {
            path: path.to_path_buf(),
            source,
        })
    })
}

fn axioms(n: u32, out: &mut impl Write) -> Outcome {
    let hv = HvGroupCtx::with_n(n)?;
    let wa = check_weak_associativity(&hv)?;
    let rep = check_reproduction(&hv)?;
    let status = |ok: bool| if ok { "pass" } else { "FAIL" };
    write!(out, "weak associativity: {} ({} triples)", status(wa.holds), wa.triples_checked)?;
    if let Some((s, t, u)) = wa.witness {
        write!(out, "; witness s={s}, t={t}, u={u}")?;
    }
    writeln!(out)?;
    write!(out, "reproduction: {}", status(rep.holds))?;
    if let Some(x) = rep.witness {
        write!(out, "; witness x={x}")?;
    }
    writeln!(out)?;
    Ok(if wa.holds && rep.holds { Verdict::Ok } else { Verdict::Mismatch })
}

fn print_graph(cg: &CommutingGraph, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "vertices: {}", format_subset(cg.labels()))?;
    writeln!(out, "adjacency:")?;
    for row in cg.graph().adjacency_rows() {
        let cells: Vec<String> = row.iter().map(u8::to_string).collect();
        writeln!(out, "  [{}]", cells.join(" "))?;
    }
    Ok(())
}

fn check(n: u32, subset: &str, dot: Option<&Path>, graph6: bool, out: &mut impl Write) -> Outcome {
    let hv = HvGroupCtx::with_n(n)?;
    let elements = hv.group().parse_subset(subset)?;
    let cg = CommutingGraph::new(&hv, &elements)?;
    print_graph(&cg, out)?;
    writeln!(out, "{}", is_nssd(cg.graph()))?;
    if graph6 {
        writeln!(out, "graph6: {}", export_graph6(&cg)?)?;
    }
    if let Some(path) = dot {
        write_file(path, &export_dot(&cg))?;
    }
    Ok(Verdict::Ok)
}

fn table(args: &TableArgs, out: &mut impl Write) -> Outcome {
    let ns = match (&args.which.n, &args.which.n_range) {
        (Some(n), _) => *n..=*n,
        (None, Some(range)) => range.clone(),
        (None, None) => unreachable!("clap enforces the group"),
    };
    let opts = EnumerationOptions {
        min_order: args.min_order,
        max_order: args.max_order,
        workers: args.workers.map(usize::from),
        connected_only: args.connected_only,
        ..Default::default()
    };
    let report = enumerate_range(ns, &opts)?;
    let format = match args.format {
        Format::Csv => ReportFormat::Csv,
        Format::Json => ReportFormat::Json,
    };
    match &args.out {
        Some(path) => nssd::enumerate::write_report_to_path(&report, format, path)?,
        None => write_report(&report, format, &mut *out)?,
    }
    if !args.expect_published {
        return Ok(Verdict::Ok);
    }
    let mismatches = compare_with_published(&report);
    for m in &mismatches {
        eprintln!("mismatch {m}");
    }
    Ok(if mismatches.is_empty() { Verdict::Ok } else { Verdict::Mismatch })
}

fn print_construction(r: &ConstructionResult, out: &mut impl Write) -> io::Result<()> {
    for c in &r.checks {
        let status = if c.passed { "pass" } else { "fail" };
        writeln!(out, "[{status}] {}: {}", c.name, c.detail)?;
    }
    let met = |b: bool| if b { "met" } else { "not met" };
    writeln!(out, "stated hypotheses: {}", met(r.stated_hypotheses_met))?;
    writeln!(out, "preconditions: {}", met(r.preconditions_met))?;
    print_graph(&r.graph, out)?;
    writeln!(out, "{}", r.certificate)
}

fn construct(n: u32, mode: Mode, u: &str, v: &str, out: &mut impl Write) -> Outcome {
    let hv = HvGroupCtx::with_n(n)?;
    let group = hv.group();
    let (u, v) = (group.parse_subset(u)?, group.parse_subset(v)?);
    let result = match mode {
        Mode::Pendant => pendant_union(&hv, &u, &v)?,
        Mode::Bridge => bridge_join(&hv, &u, &v)?,
    };
    print_construction(&result, out)?;
    if result.construction_holds() {
        Ok(Verdict::Ok)
    } else {
        eprintln!("preconditions hold but the joined graph is not NSSD");
        Ok(Verdict::Mismatch)
    }
}

fn gamma(args: &GammaArgs, out: &mut impl Write) -> Outcome {
    if let Some(id) = args.which.id {
        let r = verify_gamma(id)?;
        writeln!(out, "set {id}, n = {}", r.n)?;
        print_graph(&r.graph, out)?;
        writeln!(out, "order: {}", r.order)?;
        writeln!(out, "molecular: {}", r.molecular)?;
        writeln!(out, "{}", r.certificate)?;
        if args.graph6 {
            writeln!(out, "graph6: {}", export_graph6(&r.graph)?)?;
        }
        if let Some(path) = &args.dot {
            write_file(path, &export_dot(&r.graph))?;
        }
        let issues = discrepancies(std::slice::from_ref(&r));
        for d in &issues {
            eprintln!("discrepancy: {d}");
        }
        return Ok(if issues.is_empty() { Verdict::Ok } else { Verdict::Mismatch });
    }

    let results = verify_all();
    match args.format.unwrap_or(CatalogFormat::Text) {
        CatalogFormat::Csv => write_catalog_csv(&results, &mut *out)?,
        CatalogFormat::Text => {
            for r in &results {
                let verdict = if r.certificate.verdict { "NSSD" } else { "not NSSD" };
                let shape = if r.molecular { "molecular" } else { "not molecular" };
                writeln!(out, "{:>2}  n={}  order={:<2}  {verdict}, {shape}", r.id, r.n, r.order)?;
            }
        }
    }
    let issues = discrepancies(&results);
    for d in &issues {
        eprintln!("discrepancy: {d}");
    }
    if !issues.is_empty() {
        eprintln!("{} of {} sets verified", catalog::CATALOG_SIZE as usize - issues.len(), results.len());
    }
    Ok(if issues.is_empty() { Verdict::Ok } else { Verdict::Mismatch })
}

fn run(cli: Cli) -> Outcome {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let verdict = match &cli.command {
        Command::Axioms { n } => axioms(*n, &mut out),
        Command::Check { n, subset, dot, graph6 } => check(*n, subset, dot.as_deref(), *graph6, &mut out),
        Command::Table(args) => table(args, &mut out),
        Command::Construct { n, mode, u, v } => construct(*n, *mode, u, v, &mut out),
        Command::Gamma(args) => gamma(args, &mut out),
    }?;
    out.flush()?;
    Ok(verdict)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::Mismatch) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            eprintln!("hint: run `nssd --help` for usage");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
