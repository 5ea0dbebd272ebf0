use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use csma_raf::eval::{csv_string, mean_error_pct, random_rows, sweep, EvalError, Oracle};
use csma_raf::exact::{exact_marginals, ExactError};
use csma_raf::fugacity::{raf, FugacityError, ServiceRates};
use csma_raf::graph::dimacs::{parse_dimacs, to_dimacs_string};
use csma_raf::graph::{generate, ConflictGraph, GraphError, Topology};
use csma_raf::io::{fugacities_to_string, parse_fugacities, parse_rates, read_to_string, write_atomic, FormatError};
use csma_raf::regions::Method;
use csma_raf::sampler::{simulate, simulate_traced, SamplerError};

/// Slots and burn-in used when `sweep` runs with the sampler oracle.
const SWEEP_SLOTS: u64 = 1_000_000;
const SWEEP_BURN_IN: u64 = 10_000;

#[derive(Parser)]
#[command(name = "csma-raf", version, about = "Region-approximated CSMA fugacities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a topology as a DIMACS edge file.
    Gen(GenArgs),
    /// Compute fugacities for target service rates.
    Fugacity(FugacityArgs),
    /// Exact service rates induced by a fugacity file.
    Marginals(MarginalsArgs),
    /// Simulate slotted CSMA and report empirical service rates.
    Simulate(SimulateArgs),
    /// Approximation error over methods and loads for one graph.
    Sweep(SweepArgs),
    /// Mean error over random geometric graphs.
    Table1(Table1Args),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Complete,
    Grid,
    Ring,
    Rgg,
    Fig8,
    Chordal6,
}

#[derive(Args)]
struct TopologyArgs {
    /// Topology family.
    #[arg(long, value_enum)]
    kind: Kind,
    /// Number of links (complete, ring, rgg).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    /// Side of the placement square (rgg).
    #[arg(long, default_value_t = 3.0)]
    side: f64,
    /// Interference radius (rgg).
    #[arg(long, default_value_t = 0.8)]
    radius: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    topology: TopologyArgs,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["rate", "rates"]))]
struct FugacityArgs {
    /// DIMACS conflict graph.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Same target rate for every link.
    #[arg(long)]
    rate: Option<f64>,
    /// File of whitespace-separated per-link rates.
    #[arg(long)]
    rates: Option<PathBuf>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MarginalsArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    fugacities: PathBuf,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    fugacities: PathBuf,
    #[arg(long, default_value_t = 1_000_000)]
    slots: u64,
    #[arg(long, default_value_t = 10_000)]
    burn_in: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write `t <slot> <active-hex>` for every counted slot.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["graph", "kind"]))]
struct SweepArgs {
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long, default_value_t = 3.0)]
    side: f64,
    #[arg(long, default_value_t = 0.8)]
    radius: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "bethe,clique,cycle4")]
    methods: Vec<MethodArg>,
    /// Comma-separated loads in (0, 1].
    #[arg(long, value_delimiter = ',', required = true)]
    loads: Vec<f64>,
    #[arg(long, value_enum, default_value = "exact")]
    oracle: OracleArg,
    /// Output path; stdout when omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct Table1Args {
    #[arg(long, default_value_t = 30)]
    count: usize,
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[arg(long, default_value_t = 0.8)]
    load: f64,
    /// First graph seed; graph k uses seed + k.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Bethe,
    Clique,
    Cycle4,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Bethe => Method::Bethe,
            MethodArg::Clique => Method::Clique,
            MethodArg::Cycle4 => Method::Cycle4,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Exact,
    Sampler,
}

/// Failure with its exit code: 1 for usage and I/O, 2 for infeasible input
/// or guard violations.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn guard(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

impl From<FugacityError> for Failure {
    fn from(e: FugacityError) -> Self {
        guard(e)
    }
}

impl From<ExactError> for Failure {
    fn from(e: ExactError) -> Self {
        guard(e)
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        usage(e.to_string())
    }
}

impl From<SamplerError> for Failure {
    fn from(e: SamplerError) -> Self {
        match e {
            SamplerError::Io(e) => usage(e.to_string()),
            other => guard(other),
        }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Load(_) => usage(format!("--loads: {e}")),
            EvalError::Graph(g) => g.into(),
            EvalError::Sampler(s) => s.into(),
            other => guard(other),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<ConflictGraph, Failure> {
    parse_dimacs(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn format_error(path: &Path, e: FormatError) -> Failure {
    match e {
        FormatError::Fugacity(f) => guard(format!("{}: {f}", path.display())),
        other => usage(format!("{}: {other}", path.display())),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_atomic(path, text.as_bytes()).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| usage(format!("stdout: {e}"))),
    }
}

fn topology(
    kind: Kind,
    n: Option<usize>,
    rows: Option<usize>,
    cols: Option<usize>,
    side: f64,
    radius: f64,
) -> Result<Topology, Failure> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| usage(format!("--{flag} is required for this --kind")));
    Ok(match kind {
        Kind::Complete => Topology::Complete { n: need(n, "n")? },
        Kind::Ring => Topology::Ring { n: need(n, "n")? },
        Kind::Grid => Topology::Grid {
            rows: need(rows, "rows")?,
            cols: need(cols, "cols")?,
        },
        Kind::Rgg => {
            if !(side > 0.0 && radius >= 0.0) {
                return Err(usage("--side must be positive and --radius nonnegative"));
            }
            Topology::RandomGeometric {
                n: need(n, "n")?,
                side,
                radius,
            }
        }
        Kind::Fig8 => Topology::Fig8,
        Kind::Chordal6 => Topology::Chordal6,
    })
}

fn rates_lines(rates: &[f64]) -> String {
    let mut out = String::new();
    for (i, s) in rates.iter().enumerate() {
        writeln!(out, "s {i} {s:.16e}").expect("writing to a string");
    }
    out
}

fn run_gen(a: GenArgs) -> Result<(), Failure> {
    let t = &a.topology;
    let kind = topology(t.kind, t.n, t.rows, t.cols, t.side, t.radius)?;
    let g = generate(&kind, t.seed)?;
    emit(a.out.as_deref(), &to_dimacs_string(&g))
}

fn run_fugacity(a: FugacityArgs) -> Result<(), Failure> {
    let g = load_graph(&a.graph)?;
    let s = match (a.rate, &a.rates) {
        (Some(r), None) => ServiceRates::uniform(g.n(), r).map_err(|e| guard(format!("--rate: {e}")))?,
        (None, Some(path)) => parse_rates(&read(path)?).map_err(|e| format_error(path, e))?,
        _ => return Err(usage("give exactly one of --rate and --rates")),
    };
    if s.len() != g.n() {
        return Err(guard(format!("--rates: {} rates for {} links", s.len(), g.n())));
    }
    let v = raf(&g, a.method.into(), &s)?;
    emit(a.out.as_deref(), &fugacities_to_string(&v))
}

fn load_fugacities(path: &Path, g: &ConflictGraph) -> Result<csma_raf::fugacity::Fugacities, Failure> {
    let v = parse_fugacities(&read(path)?).map_err(|e| format_error(path, e))?;
    if v.len() != g.n() {
        return Err(guard(format!("--fugacities: {} values for {} links", v.len(), g.n())));
    }
    Ok(v)
}

fn run_marginals(a: MarginalsArgs) -> Result<(), Failure> {
    let g = load_graph(&a.graph)?;
    let v = load_fugacities(&a.fugacities, &g)?;
    emit(None, &rates_lines(&exact_marginals(&g, &v)?.marginals))
}

fn run_simulate(a: SimulateArgs) -> Result<(), Failure> {
    let g = load_graph(&a.graph)?;
    let v = load_fugacities(&a.fugacities, &g)?;
    if a.slots <= a.burn_in {
        return Err(usage("--slots must exceed --burn-in"));
    }
    let rates = match &a.trace {
        Some(path) => {
            let mut buf = Vec::new();
            let rates = simulate_traced(&g, &v, a.slots, a.burn_in, a.seed, &mut buf)?;
            write_atomic(path, &buf).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            rates
        }
        None => simulate(&g, &v, a.slots, a.burn_in, a.seed)?,
    };
    emit(None, &rates_lines(&rates))
}

fn run_sweep(a: SweepArgs) -> Result<(), Failure> {
    let (g, label) = match (&a.graph, a.kind) {
        (Some(path), None) => {
            let label = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "graph".into());
            (load_graph(path)?, label)
        }
        (None, Some(kind)) => {
            let t = topology(kind, a.n, a.rows, a.cols, a.side, a.radius)?;
            (generate(&t, a.seed)?, t.label())
        }
        _ => return Err(usage("give exactly one of --graph and --kind")),
    };
    let methods: Vec<Method> = a.methods.iter().map(|&m| m.into()).collect();
    let oracle = match a.oracle {
        OracleArg::Exact => Oracle::Exact,
        OracleArg::Sampler => Oracle::Sampler {
            slots: SWEEP_SLOTS,
            burn_in: SWEEP_BURN_IN,
            seed: a.seed,
        },
    };
    let rows = sweep(&g, &label, a.seed, &methods, &a.loads, oracle)?;
    emit(a.csv.as_deref(), &csv_string(&rows))
}

fn run_table1(a: Table1Args) -> Result<(), Failure> {
    if a.count == 0 || a.n == 0 {
        return Err(usage("--count and --n must be positive"));
    }
    let rows = random_rows(a.count, a.n, a.load, &Method::ALL, a.seed)?;
    let mut summary = String::new();
    for m in Method::ALL {
        let feasible = rows.iter().filter(|r| r.method == m && r.error_pct.is_some()).count();
        match mean_error_pct(&rows, m) {
            Ok(mean) => writeln!(summary, "{m} {mean:.2} ({feasible}/{} feasible)", a.count),
            Err(_) => writeln!(summary, "{m} - (0/{} feasible)", a.count),
        }
        .expect("writing to a string");
    }
    match &a.csv {
        Some(path) => {
            emit(Some(path), &csv_string(&rows))?;
            emit(None, &summary)
        }
        None => {
            emit(None, &summary)?;
            emit(None, &csv_string(&rows))
        }
    }
}

fn run<I, T>(args: I) -> Result<(), Failure>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return Ok(());
        }
        Err(e) => {
            let text = e.render().to_string();
            let first = text.lines().next().unwrap_or_default();
            return Err(usage(first.trim_start_matches("error: ")));
        }
    };
    match cli.command {
        Command::Gen(a) => run_gen(a),
        Command::Fugacity(a) => run_fugacity(a),
        Command::Marginals(a) => run_marginals(a),
        Command::Simulate(a) => run_simulate(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Table1(a) => run_table1(a),
    }
}

fn main() -> ExitCode {
    match run(std::env::args_os()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("csma-raf: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
