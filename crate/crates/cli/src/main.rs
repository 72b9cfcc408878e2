//! `vchrom`: spectral bounds, vector chromatic numbers and the circulant
//! search from the command line.
//!
//! Exit codes: 0 on success, 1 when any inequality is violated or a
//! counterexample is flagged, 2 on usage or input errors.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vchrom::harness::{self, RecordStatus, SearchOptions, VerifyOptions, VerifyRecord};
use vchrom::io::{parse_edge_list, parse_generator_spec, parse_graph6, write_graph6};
use vchrom::sdp::{self, SolverOptions, ThetaVariant, DEFAULT_EPS};
use vchrom::{bounds, Error, Graph};

/// `println!` that exits quietly when stdout is closed (e.g. piped into
/// `head`) instead of panicking.
macro_rules! out {
    ($($arg:tt)*) => {
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    };
}

const GRAPH_HELP: &str = "\
Graph input (exactly one):
  --g6 <STRING|FILE>   graph6 string, or a file whose first line is one
  --edges <FILE>       edge list: first line n, then one 'u v' pair per line,
                       0-based vertex ids, '#' starts a comment
  --gen <SPEC>         cycle:N | complete:N | kneser:P,K | petersen | clebsch
                       | circulant:N:D1,D2,.. | orthogonality:N";

#[derive(Parser)]
#[command(name = "vchrom", version, about = "Spectral bounds and vector chromatic numbers")]
struct Cli {
    /// Decimal places in printed values.
    #[arg(long, global = true, default_value_t = 4)]
    digits: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hoffman, Lima, Kolotilina and Ando–Lin bounds with their spectral inputs.
    #[command(after_help = GRAPH_HELP)]
    Bounds {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Vector chromatic number by semidefinite programming.
    #[command(after_help = GRAPH_HELP)]
    Chiv {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum, default_value_t = Method::Galtman)]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
    /// Lovász theta function of the graph, or one of its two variants.
    #[command(after_help = GRAPH_HELP)]
    Theta {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value = "lovasz")]
        variant: ThetaVariant,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
    /// Check every bound inequality and the theta sandwich on one graph or a corpus.
    #[command(after_help = GRAPH_HELP)]
    Verify {
        #[command(flatten)]
        graph: OptionalGraphArg,
        /// File with one graph6 string or generator spec per line.
        #[arg(long, conflicts_with_all = ["g6", "edges", "gen"])]
        corpus: Option<PathBuf>,
        /// Write one JSON record per graph to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip the two theta programs on the complement.
        #[arg(long)]
        no_thetas: bool,
        /// Skip the brute-force clique and chromatic number oracles.
        #[arg(long)]
        no_oracles: bool,
        #[arg(long, default_value_t = harness::VERIFY_TOLERANCE)]
        tolerance: f64,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
    /// Search circulant graphs for one whose Ando–Lin bound exceeds χ_v.
    Search(SearchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Maximize the Galtman dual program directly.
    Galtman,
    /// Bisect on k with feasibility certificates.
    Bisect,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphArg {
    #[arg(long, value_name = "STRING|FILE")]
    g6: Option<String>,
    #[arg(long, value_name = "FILE")]
    edges: Option<PathBuf>,
    #[arg(long, value_name = "SPEC")]
    gen: Option<String>,
}

#[derive(Args)]
#[group(multiple = false)]
struct OptionalGraphArg {
    #[arg(long, value_name = "STRING|FILE")]
    g6: Option<String>,
    #[arg(long, value_name = "FILE")]
    edges: Option<PathBuf>,
    #[arg(long, value_name = "SPEC")]
    gen: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Circulant,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Order range as MIN..MAX (inclusive) or a single N.
    #[arg(long = "n", value_name = "MIN..MAX", value_parser = parse_range)]
    range: (usize, usize),
    /// Keep one connection set per multiplier orbit (the default).
    #[arg(long, overrides_with = "no_dedup")]
    dedup: bool,
    /// Evaluate every connection set.
    #[arg(long, overrides_with = "dedup")]
    no_dedup: bool,
    /// Save progress here and resume from it when it exists.
    #[arg(long, value_name = "FILE", requires = "out")]
    checkpoint: Option<PathBuf>,
    /// JSON-lines output, one record per evaluated graph.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Flag a counterexample when ando_lin > chi_v + margin.
    #[arg(long, default_value_t = 1e-5)]
    margin: f64,
    #[arg(long, default_value_t = DEFAULT_EPS)]
    eps: f64,
    /// Evaluate a seeded random sample of this many connection sets per n.
    #[arg(long)]
    sample_per_n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Candidates evaluated between checkpoint writes.
    #[arg(long, default_value_t = 16)]
    chunk: usize,
    /// Stop after writing this many records, leaving a resumable checkpoint.
    #[arg(long, hide = true)]
    stop_after: Option<usize>,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("'{t}': {e}"));
    match s.split_once("..") {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi.strip_prefix('=').unwrap_or(hi))?)),
        None => parse(s).map(|n| (n, n)),
    }
}

/// Failure that maps to exit code 2.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

type CliResult<T> = Result<T, InputError>;

fn io_err(path: &Path, e: std::io::Error) -> InputError {
    InputError(format!("{}: {e}", path.display()))
}

/// A graph and the id it is reported under.
fn load_graph(g6: Option<&str>, edges: Option<&Path>, gen: Option<&str>) -> CliResult<(Graph, String)> {
    if let Some(spec) = gen {
        let g = parse_generator_spec(spec).map_err(|e| InputError(format!("--gen: {e}")))?;
        return Ok((g, spec.to_string()));
    }
    if let Some(arg) = g6 {
        let text = if Path::new(arg).is_file() {
            let content = fs::read_to_string(arg).map_err(|e| io_err(Path::new(arg), e))?;
            content.lines().next().unwrap_or("").trim().to_string()
        } else {
            arg.to_string()
        };
        let g = parse_graph6(text.as_bytes()).map_err(|e| InputError(format!("--g6: {e}")))?;
        return Ok((g, text));
    }
    if let Some(path) = edges {
        let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        let g = parse_edge_list(&text).map_err(|e| InputError(format!("--edges {}: {e}", path.display())))?;
        let id = String::from_utf8(write_graph6(&g)?).expect("graph6 is ASCII");
        return Ok((g, id));
    }
    Err(InputError("no graph given: use --g6, --edges or --gen".into()))
}

const GENERATOR_NAMES: [&str; 7] = [
    "cycle",
    "complete",
    "kneser",
    "petersen",
    "clebsch",
    "circulant",
    "orthogonality",
];

/// Corpus lines are generator specs when they start with a generator name,
/// graph6 otherwise. Blank lines and `#` comments are skipped.
fn load_corpus(path: &Path) -> CliResult<Vec<(Graph, String)>> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let is_spec = GENERATOR_NAMES.iter().any(|name| {
            line.strip_prefix(name)
                .is_some_and(|rest| rest.is_empty() || rest.starts_with(':'))
        });
        let parsed = if is_spec {
            parse_generator_spec(line)
        } else {
            parse_graph6(line.as_bytes())
        };
        let g = parsed.map_err(|e| InputError(format!("{}:{}: {e}", path.display(), lineno + 1)))?;
        out.push((g, line.to_string()));
    }
    Ok(out)
}

struct Fmt(usize);

impl Fmt {
    fn f(&self, x: f64) -> String {
        format!("{x:.*}", self.0)
    }

    fn opt(&self, x: Option<f64>) -> String {
        x.map_or_else(|| "-".into(), |x| self.f(x))
    }
}

fn cmd_bounds(graph: GraphArg, fmt: &Fmt) -> CliResult<ExitCode> {
    let (g, _) = load_graph(graph.g6.as_deref(), graph.edges.as_deref(), graph.gen.as_deref())?;
    let r = bounds::all_bounds(&g)?;
    let rows = [
        ("hoffman", r.hoffman),
        ("lima", r.lima),
        ("kolotilina", r.kolotilina),
        ("ando_lin", r.ando_lin),
        ("mu_1", r.mu1),
        ("mu_n", r.mu_n),
        ("delta_1", r.delta1),
        ("delta_n", r.delta_n),
        ("lambda_1", r.lambda1),
        ("s_plus", r.s_plus),
        ("s_minus", r.s_minus),
    ];
    out!("{:<12}{}", "n", r.n);
    out!("{:<12}{}", "m", r.m);
    for (name, value) in rows {
        out!("{name:<12}{}", fmt.f(value));
    }
    if !r.connected {
        for c in &r.kolotilina_components {
            out!("kolotilina on component {:?}: {}", c.vertices, fmt.f(c.value));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_chiv(graph: GraphArg, method: Method, eps: f64, fmt: &Fmt) -> CliResult<ExitCode> {
    let (g, _) = load_graph(graph.g6.as_deref(), graph.edges.as_deref(), graph.gen.as_deref())?;
    match method {
        Method::Galtman => {
            let sol = sdp::chi_v_galtman_with(&g, SolverOptions::with_eps(eps))?;
            out!("{}", fmt.f(sol.objective));
            if !sol.is_converged() {
                eprintln!(
                    "warning: solver stopped after {} iterations (residuals {:.1e}, {:.1e})",
                    sol.iterations, sol.primal_residual, sol.dual_residual
                );
            }
        }
        Method::Bisect => {
            let tol = 10f64.powi(-(fmt.0 as i32) - 1);
            let opts = SolverOptions {
                max_iterations: sdp::FEASIBILITY_MAX_ITERATIONS,
                ..SolverOptions::with_eps(eps)
            };
            let r = sdp::chi_v_bisect_with(&g, tol, opts)?;
            out!("{}", fmt.f(r.value));
            if r.undecided > 0 {
                eprintln!("warning: {} bisection steps were undecided", r.undecided);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_theta(graph: GraphArg, variant: ThetaVariant, eps: f64, fmt: &Fmt) -> CliResult<ExitCode> {
    let (g, _) = load_graph(graph.g6.as_deref(), graph.edges.as_deref(), graph.gen.as_deref())?;
    let sol = sdp::theta_with(&g, variant, SolverOptions::with_eps(eps))?;
    out!("{}", fmt.f(sol.objective));
    if !sol.is_converged() {
        eprintln!("warning: solver stopped after {} iterations", sol.iterations);
    }
    Ok(ExitCode::SUCCESS)
}

fn print_record_row(r: &VerifyRecord, fmt: &Fmt) {
    let int = |x: Option<usize>| x.map_or_else(|| "-".into(), |x| x.to_string());
    out!(
        "{:<20} {:>3} {:>4} {:>9} {:>9} {:>10} {:>9} {:>9} {:>9} {:>9} {:>5} {:>4}  {}",
        r.graph_id,
        r.n,
        r.m,
        fmt.opt(r.hoffman),
        fmt.opt(r.lima),
        fmt.opt(r.kolotilina),
        fmt.opt(r.ando_lin),
        fmt.f(r.chi_v),
        fmt.opt(r.theta),
        fmt.opt(r.theta_plus),
        int(r.omega),
        int(r.chi),
        serde_json::to_value(r.status).expect("status serializes").as_str().unwrap_or("?"),
    );
    if r.kolotilina_components.len() > 1 || r.notes.iter().any(|n| n.starts_with("disconnected")) {
        for c in &r.kolotilina_components {
            out!("    kolotilina on component {:?}: {}", c.vertices, fmt.f(c.value));
        }
    }
    for v in &r.violations {
        out!("    VIOLATION {} by {:.3e}", v.name, v.magnitude);
    }
    for note in &r.notes {
        out!("    note: {note}");
    }
}

fn cmd_verify(
    graph: OptionalGraphArg,
    corpus: Option<PathBuf>,
    out: Option<PathBuf>,
    opts: VerifyOptions,
    fmt: &Fmt,
) -> CliResult<ExitCode> {
    let graphs = match corpus {
        Some(path) => load_corpus(&path)?,
        None => vec![load_graph(graph.g6.as_deref(), graph.edges.as_deref(), graph.gen.as_deref())
            .map_err(|e| InputError(format!("{} (or use --corpus)", e.0)))?],
    };
    let mut writer = match &out {
        Some(path) => Some(BufWriter::new(File::create(path).map_err(|e| io_err(path, e))?)),
        None => None,
    };
    out!(
        "{:<20} {:>3} {:>4} {:>9} {:>9} {:>10} {:>9} {:>9} {:>9} {:>9} {:>5} {:>4}  status",
        "graph", "n", "m", "hoffman", "lima", "kolotilina", "ando_lin", "chi_v", "theta", "theta+", "omega", "chi"
    );
    let mut flagged = 0;
    let mut unverifiable = 0;
    for (g, id) in &graphs {
        let record = harness::verify_graph(g, id, &opts)?;
        print_record_row(&record, fmt);
        if let (Some(w), Some(path)) = (writer.as_mut(), out.as_ref()) {
            writeln!(w, "{}", record.to_json_line()).map_err(|e| io_err(path, e))?;
        }
        flagged += usize::from(record.has_violations());
        unverifiable += usize::from(record.status == RecordStatus::Unverifiable);
    }
    if let (Some(mut w), Some(path)) = (writer, out.as_ref()) {
        w.flush().map_err(|e| io_err(path, e))?;
    }
    if graphs.len() > 1 || flagged > 0 || unverifiable > 0 {
        out!(
            "{} graph(s), {flagged} with violations, {unverifiable} unverifiable",
            graphs.len()
        );
    }
    Ok(if flagged > 0 { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn cmd_search(args: SearchArgs, fmt: &Fmt) -> CliResult<ExitCode> {
    let Family::Circulant = args.family;
    let opts = SearchOptions {
        n_min: args.range.0,
        n_max: args.range.1,
        dedup: !args.no_dedup,
        margin: args.margin,
        eps: args.eps,
        workers: args.workers,
        sample_per_n: args.sample_per_n,
        seed: args.seed,
        chunk: args.chunk,
        stop_after: args.stop_after,
    };
    let report = |r: &VerifyRecord| {
        if r.has_violations() {
            out!(
                "{:<28} {:?}: ando_lin {} chi_v {}",
                r.graph_id,
                r.status,
                fmt.opt(r.ando_lin),
                fmt.f(r.chi_v)
            );
            for v in &r.violations {
                out!("    {} by {:.3e}", v.name, v.magnitude);
            }
        }
    };
    let summary = match &args.out {
        Some(out) => {
            let summary = harness::run_search(&opts, out, args.checkpoint.as_deref())?;
            for line in fs::read_to_string(out).map_err(|e| io_err(out, e))?.lines() {
                if let Ok(r) = serde_json::from_str::<VerifyRecord>(line) {
                    report(&r);
                }
            }
            summary
        }
        None => harness::search_circulants(&opts, |r| {
            report(r);
            Ok(())
        })?,
    };
    out!("candidates            {}", summary.candidates);
    out!("graphs evaluated      {}", summary.records);
    out!("skipped disconnected  {}", summary.skipped_disconnected);
    out!("skipped by symmetry   {}", summary.skipped_symmetric);
    out!("counterexamples       {}", summary.counterexamples);
    out!("violations            {}", summary.violations);
    out!("unverifiable          {}", summary.unverifiable);
    if !summary.complete {
        out!("stopped early; rerun with the same checkpoint to resume");
    }
    Ok(if summary.is_clean() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fmt = Fmt(cli.digits);
    let result = match cli.command {
        Command::Bounds { graph } => cmd_bounds(graph, &fmt),
        Command::Chiv { graph, method, eps } => cmd_chiv(graph, method, eps, &fmt),
        Command::Theta { graph, variant, eps } => cmd_theta(graph, variant, eps, &fmt),
        Command::Verify {
            graph,
            corpus,
            out,
            no_thetas,
            no_oracles,
            tolerance,
            eps,
        } => {
            let opts = VerifyOptions {
                eps,
                tolerance,
                thetas: !no_thetas,
                oracles: !no_oracles,
            };
            cmd_verify(graph, corpus, out, opts, &fmt)
        }
        Command::Search(args) => cmd_search(args, &fmt),
    };
    result.unwrap_or_else(|InputError(msg)| {
        eprintln!("error: {msg}");
        ExitCode::from(2)
    })
}
