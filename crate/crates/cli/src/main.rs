use std::fs;
use std::io::{self, Read, Write};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use semprobe_core::context::{generate_benchmark, BenchmarkError, BenchmarkSpec, ContextError};
use semprobe_core::lattice::{
    aoc_json, aoc_to_dot, build_aoc, concept_lattice, iceberg_filter, lattice_json, lattice_to_dot, AocMode, Labeling,
    LatticeError, DEFAULT_CONCEPT_LIMIT,
};
use semprobe_core::probe::{
    complementary_cover, layout, reveal, CoversView, GroupView, GroupedContext, LayoutView, ProbeError, ProbeState,
    RevealView, Weight,
};
use semprobe_core::{parse_rational, FormalContext};

#[derive(Parser)]
#[command(
    name = "semprobe",
    version,
    about = "Concept lattices and semantic probes over formal contexts"
)]
struct Cli {
    /// Worker threads for lattice enumeration (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the concept lattice
    Lattice(LatticeArgs),
    /// Attribute/object-concept sub-hierarchy
    Aoc(AocArgs),
    /// List attribute groups (attributes with identical extents)
    Groups(GroupsArgs),
    /// Lay out attribute groups by semantic distance to a probe
    Probe(ProbeArgs),
    /// Minimal sets of groups whose extents cover the probe
    Covers(CoversArgs),
    /// Generate the synthetic film benchmark
    GenBenchmark(BenchArgs),
    /// Convert between .cxt and CSV
    Convert(ConvertArgs),
    /// Run the HTTP server
    Serve(ServeArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Cxt,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Labels {
    Full,
    Reduced,
}

impl From<Labels> for Labeling {
    fn from(l: Labels) -> Self {
        match l {
            Labels::Full => Labeling::Full,
            Labels::Reduced => Labeling::Reduced,
        }
    }
}

#[derive(Args)]
struct Input {
    /// Context file, `-` for stdin
    #[arg(long, short)]
    input: String,
    /// Input format; by default `.csv` files are CSV and everything else is .cxt
    #[arg(long)]
    format: Option<Format>,
    /// Write here instead of stdout
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LatticeArgs {
    #[command(flatten)]
    io: Input,
    /// Print concept and edge counts only
    #[arg(long, conflicts_with_all = ["dot", "min_support"])]
    stats: bool,
    /// Graphviz output instead of JSON
    #[arg(long, conflicts_with = "min_support")]
    dot: bool,
    #[arg(long, value_enum, default_value = "full")]
    labels: Labels,
    /// Keep only concepts with support >= r (e.g. 0.6 or 3/5)
    #[arg(long)]
    min_support: Option<String>,
    #[arg(long, default_value_t = DEFAULT_CONCEPT_LIMIT)]
    limit: usize,
}

#[derive(Args)]
struct AocArgs {
    #[command(flatten)]
    io: Input,
    #[arg(long)]
    dot: bool,
    #[arg(long, value_enum, default_value = "reduced")]
    labels: Labels,
    /// Keep attribute-concepts only
    #[arg(long)]
    attributes_only: bool,
    #[arg(long, default_value_t = DEFAULT_CONCEPT_LIMIT)]
    limit: usize,
}

#[derive(Args)]
struct GroupsArgs {
    #[command(flatten)]
    io: Input,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ProbeSpec {
    /// Comma-separated object names
    #[arg(long)]
    objects: String,
    /// Weights such as `Cate=0.5,Brad=1`; loaded objects default to 1
    #[arg(long)]
    weights: Option<String>,
}

#[derive(Args)]
struct ProbeArgs {
    #[command(flatten)]
    io: Input,
    #[command(flatten)]
    probe: ProbeSpec,
    #[arg(long)]
    json: bool,
    /// Print the reveal for this group id instead of the layout
    #[arg(long)]
    reveal: Option<usize>,
}

#[derive(Args)]
struct CoversArgs {
    #[command(flatten)]
    io: Input,
    #[command(flatten)]
    probe: ProbeSpec,
    #[arg(long, default_value_t = 3)]
    max_size: usize,
    #[arg(long, default_value_t = 50)]
    max_results: usize,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    films: usize,
    #[arg(long)]
    people: usize,
    #[arg(long)]
    trilogy: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Output format; by default taken from the --out extension
    #[arg(long)]
    format: Option<Format>,
}

#[derive(Args)]
struct ConvertArgs {
    #[command(flatten)]
    io: Input,
    /// Output format; by default taken from the --out extension, else .cxt
    #[arg(long)]
    to: Option<Format>,
}

#[derive(Args)]
struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1")]
    host: String,
    #[arg(long, default_value_t = 8080)]
    port: u16,
    /// Persist datasets and sessions here
    #[arg(long)]
    data_dir: Option<PathBuf>,
    #[arg(long, default_value_t = 100_000)]
    max_objects: usize,
    #[arg(long, default_value_t = 100_000)]
    max_attributes: usize,
    #[arg(long, default_value_t = DEFAULT_CONCEPT_LIMIT)]
    concept_limit: usize,
}

enum Failure {
    Usage(String),
    Data(String),
    Limit(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Data(_) => 2,
            Failure::Limit(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Data(m) | Failure::Limit(m) => m,
        }
    }
}

impl From<ContextError> for Failure {
    fn from(e: ContextError) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::Overflow { .. } => Failure::Limit(e.to_string()),
            _ => Failure::Data(e.to_string()),
        }
    }
}

impl From<ProbeError> for Failure {
    fn from(e: ProbeError) -> Self {
        match e {
            ProbeError::InvalidWeight(_) | ProbeError::InvalidArgument(_) => Failure::Usage(e.to_string()),
            _ => Failure::Data(e.to_string()),
        }
    }
}

impl From<BenchmarkError> for Failure {
    fn from(e: BenchmarkError) -> Self {
        match e {
            BenchmarkError::RetryBudgetExhausted { .. } => Failure::Limit(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn sniff(path: &str, explicit: Option<Format>) -> Format {
    explicit.unwrap_or(if path.to_ascii_lowercase().ends_with(".csv") {
        Format::Csv
    } else {
        Format::Cxt
    })
}

fn read_context(io: &Input) -> Result<FormalContext, Failure> {
    let text = if io.input == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Data(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(&io.input).map_err(|e| Failure::Data(format!("{}: {e}", io.input)))?
    };
    let ctx = match sniff(&io.input, io.format) {
        Format::Cxt => FormalContext::parse_cxt(&text),
        Format::Csv => FormalContext::parse_csv(&text),
    };
    ctx.map_err(|e| Failure::Data(format!("{}: {e}", io.input)))
}

fn emit(out: Option<&PathBuf>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Data(format!("{}: {e}", path.display()))),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Data(format!("stdout: {e}"))),
    }
}

/// Compact JSON with sorted keys, the same bytes the server sends.
fn to_json<T: serde::Serialize>(v: &T) -> String {
    let value: Value = serde_json::to_value(v).expect("views serialize");
    value.to_string() + "\n"
}

fn write_context(ctx: &FormalContext, format: Format) -> String {
    match format {
        Format::Cxt => ctx.write_cxt(),
        Format::Csv => ctx.write_csv(),
    }
}

fn lattice_cmd(a: LatticeArgs) -> Outcome {
    let ctx = read_context(&a.io)?;
    let theta = match &a.min_support {
        Some(s) => match parse_rational(s) {
            Some(r) if r <= 1.into() => Some(r),
            _ => {
                return Err(Failure::Usage(format!(
                    "--min-support must be a rational in [0, 1], got {s:?}"
                )))
            }
        },
        None => None,
    };
    let lattice = concept_lattice(&ctx, a.limit)?;
    let text = if a.stats {
        format!("concepts: {}\nedges: {}\n", lattice.len(), lattice.cover_pairs().len())
    } else if a.dot {
        lattice_to_dot(&ctx, &lattice, a.labels.into())
    } else {
        let only = theta.map(|t| iceberg_filter(&lattice, &ctx, t));
        to_json(&lattice_json(&ctx, &lattice, only.as_deref()))
    };
    emit(a.io.out.as_ref(), &text)
}

fn aoc_cmd(a: AocArgs) -> Outcome {
    let ctx = read_context(&a.io)?;
    let lattice = concept_lattice(&ctx, a.limit)?;
    let mode = if a.attributes_only {
        AocMode::AttributesOnly
    } else {
        AocMode::AttributesAndObjects
    };
    let aoc = build_aoc(&ctx, &lattice, mode)?;
    let text = if a.dot {
        aoc_to_dot(&ctx, &lattice, &aoc, a.labels.into())
    } else {
        to_json(&aoc_json(&ctx, &lattice, &aoc))
    };
    emit(a.io.out.as_ref(), &text)
}

fn groups_cmd(a: GroupsArgs) -> Outcome {
    let gc = GroupedContext::new(read_context(&a.io)?);
    let views: Vec<GroupView> = (0..gc.groups().len()).map(|g| GroupView::new(&gc, g)).collect();
    let text = if a.json {
        to_json(&serde_json::json!({ "groups": views }))
    } else {
        let mut s = format!("groups: {}\n", views.len());
        for v in &views {
            s += &format!(
                "{}\t[{}]\t{}\t{{{}}}\n",
                v.id,
                v.badge,
                v.members.join(", "),
                v.extent.join(", ")
            );
        }
        s
    };
    emit(a.io.out.as_ref(), &text)
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

fn build_probe(ctx: &FormalContext, spec: &ProbeSpec) -> Result<ProbeState, Failure> {
    let mut probe = ProbeState::new(ctx);
    for name in split_list(&spec.objects) {
        probe.add_named(ctx, name)?;
    }
    for item in split_list(spec.weights.as_deref().unwrap_or_default()) {
        let (name, w) = item
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("--weights expects name=value, got {item:?}")))?;
        let w: Weight = w.trim().parse()?;
        probe.set_named_weight(ctx, name.trim(), w)?;
    }
    Ok(probe)
}

fn probe_cmd(a: ProbeArgs) -> Outcome {
    let gc = GroupedContext::new(read_context(&a.io)?);
    let probe = build_probe(gc.context(), &a.probe)?;
    if let Some(group) = a.reveal {
        let r = reveal(&gc, &probe, group)?;
        return emit(a.io.out.as_ref(), &to_json(&RevealView::new(&gc, &r)));
    }
    let view = LayoutView::new(&gc, &layout(&gc, &probe));
    let text = if a.json {
        to_json(&view)
    } else {
        let mut s = String::new();
        for layer in &view.layers {
            s += &format!("sd {}\n", layer.sd);
            for class in &layer.classes {
                let groups: Vec<String> = class.groups.iter().map(|g| g.members.join("=")).collect();
                s += &format!("  {{{}}}: {}\n", class.filtered_extent.join(", "), groups.join(", "));
            }
        }
        s
    };
    emit(a.io.out.as_ref(), &text)
}

fn covers_cmd(a: CoversArgs) -> Outcome {
    let gc = GroupedContext::new(read_context(&a.io)?);
    let probe = build_probe(gc.context(), &a.probe)?;
    let r = complementary_cover(&gc, &probe, a.max_size, a.max_results)?;
    emit(a.io.out.as_ref(), &to_json(&CoversView::from(&r)))
}

fn bench_cmd(a: BenchArgs) -> Outcome {
    let ctx = generate_benchmark(BenchmarkSpec {
        films: a.films,
        people: a.people,
        trilogy: a.trilogy,
        seed: a.seed,
    })?;
    let path = a
        .out
        .as_ref()
        .map(|p| p.to_string_lossy().into_owned())
        .unwrap_or_default();
    emit(a.out.as_ref(), &write_context(&ctx, sniff(&path, a.format)))
}

fn convert_cmd(a: ConvertArgs) -> Outcome {
    let ctx = read_context(&a.io)?;
    let path =
        a.io.out
            .as_ref()
            .map(|p| p.to_string_lossy().into_owned())
            .unwrap_or_default();
    emit(a.io.out.as_ref(), &write_context(&ctx, sniff(&path, a.to)))
}

fn serve_cmd(a: ServeArgs) -> Outcome {
    tracing_subscriber::fmt().with_writer(io::stderr).init();
    let addr: SocketAddr = format!("{}:{}", a.host, a.port)
        .parse()
        .map_err(|e| Failure::Usage(format!("bad address: {e}")))?;
    let config = semprobe_server::Config {
        data_dir: a.data_dir,
        max_objects: a.max_objects,
        max_attributes: a.max_attributes,
        concept_limit: a.concept_limit,
        ..Default::default()
    };
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Data(e.to_string()))?;
    runtime
        .block_on(semprobe_server::serve(config, addr))
        .map_err(|e| Failure::Data(e.to_string()))
}

fn run(cli: Cli) -> Outcome {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("--threads: {e}")))?;
    }
    match cli.command {
        Command::Lattice(a) => lattice_cmd(a),
        Command::Aoc(a) => aoc_cmd(a),
        Command::Groups(a) => groups_cmd(a),
        Command::Probe(a) => probe_cmd(a),
        Command::Covers(a) => covers_cmd(a),
        Command::GenBenchmark(a) => bench_cmd(a),
        Command::Convert(a) => convert_cmd(a),
        Command::Serve(a) => serve_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("semprobe: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
