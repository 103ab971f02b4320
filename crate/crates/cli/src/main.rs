//! `skewlab`: one experiment per invocation, results as CSV, JSON or
//! Markdown on standard output or in a file.
//!
//! Exit status: 0 on success, 1 when a checked inequality or verification
//! fails (the offending rows or pair are still emitted), 2 on invalid
//! arguments.

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use skewlab_core::clique::{Method, Schedule};
use skewlab_core::constructions::{
    enumerate_c, enumerate_fibonacci, greedy_maximal_extension, is_maximal, verify_pairwise_skewincident, Verdict,
};
use skewlab_core::counting::{crossover_scan, tail_probability};
use skewlab_core::graph::{all_loops, complete, complete_multipartite, path, skew_alphabet};
use skewlab_core::montecarlo::monte_carlo_tail;
use skewlab_core::report;
use skewlab_core::solver::{
    exact_attractive, exact_m, exact_mg, multipartite_m, sandwich_check, witness_subsets_per_part, ExtremalResult,
    SolveOptions,
};
use skewlab_core::sperner::{max_antichain, projection_bound_check};
use skewlab_core::table::{self, Cell, Table};
use skewlab_core::{Error, Family, Graph, Partition};

#[derive(Parser)]
#[command(name = "skewlab", version, about = "Exact experiments on skewincident binary strings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Lift the default size caps of the exact solvers.
    #[arg(long, global = true)]
    allow_large: bool,
    /// Include solver wall-clock times (output is then no longer reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::BranchAndBound)]
    method: MethodArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Markdown,
}

impl From<Format> for table::Format {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => table::Format::Csv,
            Format::Json => table::Format::Json,
            Format::Markdown => table::Format::Markdown,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    BranchAndBound,
    Enumeration,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    /// Strings with γ(x) > n.
    #[value(name = "C")]
    C,
    /// C_n extended greedily to a maximal family.
    #[value(name = "greedy-C")]
    GreedyC,
    /// Strings without two adjacent ones.
    Fibonacci,
}

#[derive(Args, Clone)]
struct Lengths {
    #[arg(long, conflicts_with = "n_range")]
    n: Option<usize>,
    /// Inclusive range such as `1..8`.
    #[arg(long, value_parser = parse_range)]
    n_range: Option<RangeInclusive<usize>>,
}

impl Lengths {
    fn get(&self, default: Option<RangeInclusive<usize>>) -> Result<RangeInclusive<usize>, Failure> {
        match (self.n, &self.n_range, default) {
            (Some(n), _, _) => Ok(n..=n),
            (None, Some(r), _) => Ok(r.clone()),
            (None, None, Some(d)) => Ok(d),
            (None, None, None) => Err(Failure::usage("one of --n or --n-range is required")),
        }
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s.split_once("..").ok_or("expected a range like 1..8")?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

#[derive(Subcommand)]
enum Command {
    /// Distribution of γ at one length, or a per-length summary.
    GammaDist(Lengths),
    /// List the members of a construction.
    Construct {
        #[arg(long, value_enum, ignore_case = true, default_value_t = Construction::C)]
        construction: Construction,
        #[arg(long)]
        n: usize,
    },
    /// Check a construction, a family file, or one of the bound chains.
    Verify(VerifyArgs),
    /// M(n) by exact search.
    ExactM(Lengths),
    /// M(G) for a graph.
    GraphM(GraphArgs),
    /// Largest pairwise-attractive family of mappings.
    Attractive {
        /// Position graph: path:N, all-loops:N, complete:N, edgeless:N or a file.
        #[arg(long)]
        f: String,
        /// Value graph: skew, k2, path:N, all-loops:N, complete:N, edgeless:N or a file.
        #[arg(long)]
        g: String,
        #[arg(long)]
        n: usize,
    },
    /// Largest antichains of Fibonacci strings.
    Sperner {
        #[command(flatten)]
        lengths: Lengths,
        /// Print the antichain itself (single --n only).
        #[arg(long)]
        witness: bool,
    },
    /// Estimate the tail probability by sampling and compare with the exact value.
    Montecarlo {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run this many consecutive seeds starting at --seed.
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        /// Tolerance in standard errors.
        #[arg(long, default_value_t = 3.0)]
        sigma: f64,
    },
    /// Where 2^n − |C_n| ≤ 2^{0.96n} starts to hold for good.
    Crossover {
        #[arg(long, default_value_t = 200)]
        n: usize,
    },
    /// Summary table of all bounds, or the per-length bound table.
    Report {
        #[command(flatten)]
        lengths: Lengths,
        /// Per-length table of both bounds up to the end of the range.
        #[arg(long)]
        theorem: bool,
    },
}

#[derive(Args)]
#[group(id = "check", required = true, multiple = false, args = ["construction", "input", "sandwich", "projection", "multipartite"])]
struct VerifyArgs {
    #[arg(long, value_enum, ignore_case = true)]
    construction: Option<Construction>,
    /// Family file: one string per line, or a JSON array of strings.
    #[arg(long)]
    input: Option<PathBuf>,
    /// |C_n| ≤ M(n) ≤ 2^n − (f_n − m_n).
    #[arg(long)]
    sandwich: bool,
    /// m_n ≤ f_{n−1} ≤ (2/3) f_n via distinct projections.
    #[arg(long)]
    projection: bool,
    /// Exact M(G) against the closed form for a complete multipartite graph, e.g. 2,2,1.
    #[arg(long)]
    multipartite: Option<Partition>,
    #[command(flatten)]
    lengths: Lengths,
}

#[derive(Args)]
#[group(id = "source", required = true, multiple = false, args = ["graph", "path", "multipartite"])]
struct GraphArgs {
    /// Edge-list file: vertex count on the first line, then `u v` per edge.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    path: Option<usize>,
    #[arg(long)]
    multipartite: Option<Partition>,
}

/// Why a run did not succeed.
enum Failure {
    /// Bad input; exit 2.
    Usage(String),
    /// A check failed; the artifact is still written. Exit 1.
    Check(String),
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure::Usage(msg.into())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoCrossover { .. } | Error::NotSkewincident(..) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// What a command produced, and whether its checks passed.
struct Outcome {
    text: String,
    failed: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, failed: None }
    }

    fn check(text: String, passed: bool, msg: impl FnOnce() -> String) -> Self {
        Outcome { text, failed: (!passed).then(msg) }
    }
}

struct Ctx {
    format: table::Format,
    opts: SolveOptions,
    timing: bool,
}

impl Ctx {
    fn table(&self, t: &Table) -> String {
        t.render(self.format)
    }

    fn result(&self, n: usize, r: ExtremalResult) -> String {
        let r = if self.timing { r } else { r.without_timing() };
        match self.format {
            table::Format::Json => {
                let mut s = r.to_json();
                s.push('\n');
                s
            }
            _ => self.table(&report::result_table(&[(n, r)], self.timing)),
        }
    }

    fn family(&self, f: &Family) -> String {
        match self.format {
            table::Format::Json => {
                let mut s = f.to_json();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
            _ => f.to_lines(),
        }
    }
}

/// Reads `SKEWLAB_THREADS`: unset uses every core, 0 or 1 runs the
/// solvers sequentially, k > 1 caps the worker pool at k.
fn configure_threads() -> Result<Schedule, Failure> {
    let Ok(raw) = std::env::var("SKEWLAB_THREADS") else {
        return Ok(Schedule::Parallel);
    };
    let k: usize = raw
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("SKEWLAB_THREADS must be a non-negative integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(k.max(1))
        .build_global()
        .map_err(|e| Failure::usage(e.to_string()))?;
    Ok(if k > 1 { Schedule::Parallel } else { Schedule::Sequential })
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn graph_spec(spec: &str, allow_skew: bool) -> Result<Graph, Failure> {
    let sized = |s: &str| -> Result<usize, Failure> {
        s.parse().map_err(|_| Failure::usage(format!("bad vertex count in {spec:?}")))
    };
    let g = match spec.split_once(':') {
        Some(("path", k)) => path(sized(k)?)?,
        Some(("all-loops", k)) => all_loops(sized(k)?)?,
        Some(("complete", k)) => complete(sized(k)?)?,
        Some(("edgeless", k)) => Graph::empty(sized(k)?)?,
        _ if allow_skew && spec == "skew" => skew_alphabet(),
        _ if allow_skew && spec == "k2" => complete(2)?,
        _ => Graph::from_text(&read_file(&PathBuf::from(spec))?)?,
    };
    Ok(g)
}

fn verdict_cells(v: &Verdict) -> [Cell; 3] {
    match v {
        Verdict::Ok => [true.into(), Cell::Empty, Cell::Empty],
        Verdict::Counterexample(x, y) => [false.into(), Cell::Text(x.to_string()), Cell::Text(y.to_string())],
    }
}

fn verify(args: &VerifyArgs, ctx: &Ctx) -> Result<Outcome, Failure> {
    if let Some(construction) = args.construction {
        let range = args.lengths.get(None)?;
        let mut t = Table::new(["n", "construction", "size", "pairwise", "x", "y", "maximal"]);
        let mut all_ok = true;
        for n in range {
            let (name, family, check_maximal) = match construction {
                Construction::C => ("C", enumerate_c(n)?, false),
                Construction::GreedyC => ("greedy-C", greedy_maximal_extension(&enumerate_c(n)?)?, true),
                Construction::Fibonacci => ("fibonacci", enumerate_fibonacci(n)?, false),
            };
            let verdict = verify_pairwise_skewincident(&family);
            let maximal = if check_maximal { Some(is_maximal(&family)?) } else { None };
            all_ok &= verdict.is_ok() && maximal != Some(false);
            let [ok, x, y] = verdict_cells(&verdict);
            t.push(vec![n.into(), name.into(), family.len().into(), ok, x, y, maximal.into()]);
        }
        return Ok(Outcome::check(ctx.table(&t), all_ok, || "a family is not pairwise skewincident".into()));
    }
    if let Some(path) = &args.input {
        let text = read_file(path)?;
        let family = if text.trim_start().starts_with('[') {
            Family::from_json(&text, args.lengths.n)?
        } else {
            Family::from_lines(&text, args.lengths.n)?
        };
        let verdict = verify_pairwise_skewincident(&family);
        let mut t = Table::new(["n", "size", "pairwise", "x", "y"]);
        let [ok, x, y] = verdict_cells(&verdict);
        t.push(vec![family.string_len().into(), family.len().into(), ok, x, y]);
        return Ok(Outcome::check(ctx.table(&t), verdict.is_ok(), || "the family is not pairwise skewincident".into()));
    }
    if args.sandwich {
        let reports = args
            .lengths
            .get(None)?
            .map(|n| sandwich_check(n, &ctx.opts))
            .collect::<Result<Vec<_>, _>>()?;
        let ok = reports.iter().all(|r| r.holds());
        return Ok(Outcome::check(ctx.table(&report::sandwich_table(&reports)), ok, || {
            "the sandwich inequality fails".into()
        }));
    }
    if args.projection {
        let reports = args
            .lengths
            .get(None)?
            .map(projection_bound_check)
            .collect::<Result<Vec<_>, _>>()?;
        let ok = reports.iter().all(|r| r.holds());
        return Ok(Outcome::check(ctx.table(&report::projection_table(&reports)), ok, || {
            "the projection bound fails".into()
        }));
    }
    let p = args.multipartite.as_ref().expect("clap enforces one check");
    let result = exact_mg(&complete_multipartite(p)?, &ctx.opts)?;
    let formula = multipartite_m(p);
    let per_part = witness_subsets_per_part(&result, p)?;
    let within_parts = per_part.iter().all(|&k| k <= 1);
    let ok = formula == result.size.into() && within_parts;
    let mut t = Table::new(["partition", "exact", "formula", "max_subsets_in_one_part", "holds"]);
    t.push(vec![
        Cell::Text(p.to_string()),
        result.size.into(),
        formula.into(),
        per_part.iter().copied().max().unwrap_or(0).into(),
        ok.into(),
    ]);
    Ok(Outcome::check(ctx.table(&t), ok, || format!("M(G) differs from the closed form for {p}")))
}

fn run(cli: &Cli, ctx: &Ctx) -> Result<Outcome, Failure> {
    let out = match &cli.command {
        Command::GammaDist(lengths) => {
            let range = lengths.get(None)?;
            let t = if lengths.n.is_some() {
                report::gamma_table(*range.start())?
            } else {
                report::gamma_summary_table(range)?
            };
            Outcome::ok(ctx.table(&t))
        }
        Command::Construct { construction, n } => {
            let family = match construction {
                Construction::C => enumerate_c(*n)?,
                Construction::GreedyC => greedy_maximal_extension(&enumerate_c(*n)?)?,
                Construction::Fibonacci => enumerate_fibonacci(*n)?,
            };
            Outcome::ok(ctx.family(&family))
        }
        Command::Verify(args) => verify(args, ctx)?,
        Command::ExactM(lengths) => {
            let range = lengths.get(None)?;
            if lengths.n.is_some() {
                Outcome::ok(ctx.result(*range.start(), exact_m(*range.start(), &ctx.opts)?))
            } else {
                let rows = range
                    .map(|n| exact_m(n, &ctx.opts).map(|r| (n, if ctx.timing { r } else { r.without_timing() })))
                    .collect::<Result<Vec<_>, _>>()?;
                Outcome::ok(ctx.table(&report::result_table(&rows, ctx.timing)))
            }
        }
        Command::GraphM(args) => {
            let g = match (&args.graph, args.path, &args.multipartite) {
                (Some(file), _, _) => Graph::from_text(&read_file(file)?)?,
                (_, Some(n), _) => path(n)?,
                (_, _, Some(p)) => complete_multipartite(p)?,
                _ => unreachable!("clap enforces one source"),
            };
            Outcome::ok(ctx.result(g.vertex_count(), exact_mg(&g, &ctx.opts)?))
        }
        Command::Attractive { f, g, n } => {
            let fg = graph_spec(f, false)?;
            let gg = graph_spec(g, true)?;
            Outcome::ok(ctx.result(*n, exact_attractive(&fg, &gg, *n, &ctx.opts)?))
        }
        Command::Sperner { lengths, witness } => {
            let range = lengths.get(None)?;
            if *witness {
                let n = lengths.n.ok_or_else(|| Failure::usage("--witness needs a single --n"))?;
                Outcome::ok(ctx.family(&max_antichain(n)?.witness))
            } else {
                Outcome::ok(ctx.table(&report::sperner_table(range)?))
            }
        }
        Command::Montecarlo { n, samples, seed, seeds, sigma } => {
            if *seeds == 0 {
                return Err(Failure::usage("--seeds must be at least 1"));
            }
            let exact = tail_probability(*n)?;
            let rows = (0..*seeds)
                .map(|k| monte_carlo_tail(*n, *samples, seed.wrapping_add(k)).map(|e| (e, exact.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            let t = report::montecarlo_table(&rows, *sigma);
            let hits = rows.iter().filter(|(e, x)| e.within(x.to_f64(), *sigma)).count() as u64;
            // A single run must agree; a batch may miss in at most 1% of seeds.
            let passed = hits * 100 >= 99 * seeds;
            Outcome::check(ctx.table(&t), passed, || {
                format!("{hits} of {seeds} estimates within {sigma} standard errors")
            })
        }
        Command::Crossover { n } => {
            let t = report::crossover_table(*n)?;
            let text = ctx.table(&t);
            match crossover_scan(*n) {
                Ok(start) => {
                    eprintln!("crossover at n = {start}");
                    Outcome::ok(text)
                }
                Err(e @ Error::NoCrossover { .. }) => Outcome::check(text, false, || e.to_string()),
                Err(e) => return Err(e.into()),
            }
        }
        Command::Report { lengths, theorem } => {
            let range = lengths.get(Some(1..=8))?;
            let t = if *theorem {
                report::theorem_table(*range.end())?
            } else {
                report::summary_table(range, &ctx.opts)?
            };
            Outcome::ok(ctx.table(&t))
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let schedule = match configure_threads() {
        Ok(s) => s,
        Err(Failure::Usage(msg) | Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let ctx = Ctx {
        format: cli.format.into(),
        opts: SolveOptions {
            method: match cli.method {
                MethodArg::BranchAndBound => Method::BranchAndBound,
                MethodArg::Enumeration => Method::Enumeration,
            },
            schedule,
            allow_large: cli.allow_large,
        },
        timing: cli.timing,
    };
    let outcome = match run(&cli, &ctx) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(outcome.text.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    match outcome.failed {
        Some(msg) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}
