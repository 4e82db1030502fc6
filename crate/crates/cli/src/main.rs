//! `coremaint`: k-core decomposition and incremental maintenance from the
//! command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 input error, 3 invariant
//! violation.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coremaint::decompose::{check_nested_cores, check_xy_bounds};
use coremaint::generate::{generate_barabasi_albert, generate_power_law};
use coremaint::harness::{breakeven, run_trial, write_csv, write_update_log, TrialConfig};
use coremaint::io::{
    load_edge_list, parse_updates, write_core_dump, write_edge_list, EdgeUpdate, LoadedGraph, NodeLabels, UpdateOp,
};
use coremaint::{brute_force_core, decompose, Algorithm, DynamicCore, Graph, NodeId, UpdateKind, Variant};

/// Graphs above this many nodes skip the brute-force cross-check in
/// `validate`.
const BRUTE_FORCE_LIMIT: usize = 5000;

#[derive(Parser)]
#[command(name = "coremaint", version, about = "k-core decomposition and incremental core maintenance")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a graph and print `node core` lines.
    Cores {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply an update script (`i u v` / `d u v` lines) and keep cores current.
    Update(UpdateArgs),
    /// Time every algorithm on one random update stream and print CSV.
    Bench(BenchArgs),
    /// Write a synthetic power-law graph as an edge list.
    Gen {
        #[arg(long)]
        nodes: usize,
        /// Mean number of links per new node.
        #[arg(long, default_value_t = 5)]
        mdeg: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Model::PowerLaw)]
        model: Model,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check graph and core invariants, optionally while replaying updates.
    Validate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        updates: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "N,X,Y,XY")]
        variants: Vec<Algorithm>,
    },
}

#[derive(Args)]
struct UpdateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    updates: PathBuf,
    #[arg(long, default_value = "XY")]
    variant: Algorithm,
    /// JSON-lines report file; reports go to stdout when omitted.
    #[arg(long)]
    log: Option<PathBuf>,
    /// Final core dump file; the dump follows the reports on stdout when
    /// omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, conflicts_with = "gen_nodes", required_unless_present = "gen_nodes")]
    graph: Option<PathBuf>,
    /// Generate a power-law graph with this many nodes instead of loading one.
    #[arg(long)]
    gen_nodes: Option<usize>,
    #[arg(long, default_value_t = 5)]
    mdeg: usize,
    #[arg(long, default_value_t = 100)]
    dels: usize,
    #[arg(long, default_value_t = 100)]
    inss: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "B,N,X,Y,XY")]
    variants: Vec<Algorithm>,
    /// Untimed deletions before the timed stream.
    #[arg(long, default_value_t = 0)]
    warmup: usize,
    /// Dataset name for the CSV; defaults to the graph file stem.
    #[arg(long)]
    dataset: Option<String>,
    /// Per-update JSON-lines log for every algorithm.
    #[arg(long)]
    log: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Batch sizes for a break-even table of XY against B, written to stderr.
    #[arg(long, value_delimiter = ',')]
    breakeven: Vec<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    /// Preferential attachment with a heavy-tailed number of links per node.
    PowerLaw,
    /// Classic preferential attachment, exactly `mdeg` links per node.
    Ba,
}

#[derive(Debug)]
enum Failure {
    /// The reader of stdout went away; not worth a diagnostic.
    Closed,
    Input(String),
    Invariant(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Closed => 0,
            Failure::Input(_) => 2,
            Failure::Invariant(_) => 3,
        }
    }
}

fn input<E: std::fmt::Display>(context: impl std::fmt::Display) -> impl FnOnce(E) -> Failure {
    move |e| Failure::Input(format!("{context}: {e}"))
}

fn read_graph(path: &Path) -> Result<LoadedGraph, Failure> {
    let f = File::open(path).map_err(input(path.display()))?;
    load_edge_list(BufReader::new(f)).map_err(input(path.display()))
}

fn read_updates(path: &Path) -> Result<Vec<EdgeUpdate>, Failure> {
    let f = File::open(path).map_err(input(path.display()))?;
    parse_updates(BufReader::new(f)).map_err(input(path.display()))
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(input(p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_err(e: io::Error) -> Failure {
    if e.kind() == io::ErrorKind::BrokenPipe {
        return Failure::Closed;
    }
    Failure::Input(format!("write failed: {e}"))
}

fn cores(graph: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let loaded = read_graph(graph)?;
    let cs = decompose(&loaded.graph);
    let mut w = sink(out)?;
    write_core_dump(&mut w, &loaded.graph, &cs, &loaded.labels).map_err(write_err)?;
    w.flush().map_err(write_err)
}

/// Resolves an update's labels, creating nodes for unknown labels on
/// insertion.
fn resolve(
    dc: &mut DynamicCore,
    labels: &mut NodeLabels,
    up: &EdgeUpdate,
    line: usize,
) -> Result<(NodeId, NodeId), Failure> {
    let mut get = |label: u64| match (labels.id(label), up.op) {
        (Some(id), _) => Ok(id),
        (None, UpdateOp::Insert) => {
            let id = dc.add_node();
            let pushed = labels.push(label);
            debug_assert_eq!(id, pushed);
            Ok(id)
        }
        (None, UpdateOp::Delete) => Err(Failure::Input(format!("update {line}: unknown node {label}"))),
    };
    Ok((get(up.u)?, get(up.v)?))
}

fn kind(op: UpdateOp) -> UpdateKind {
    match op {
        UpdateOp::Insert => UpdateKind::Insert,
        UpdateOp::Delete => UpdateKind::Delete,
    }
}

fn update(args: &UpdateArgs) -> Result<(), Failure> {
    let loaded = read_graph(&args.graph)?;
    let updates = read_updates(&args.updates)?;
    let mut labels = loaded.labels;
    let mut dc = DynamicCore::new(loaded.graph, args.variant);
    let mut log = sink(args.log.as_deref())?;
    for (i, up) in updates.iter().enumerate() {
        let (u, v) = resolve(&mut dc, &mut labels, up, i + 1)?;
        let report = dc
            .apply(kind(up.op), u, v)
            .map_err(|e| Failure::Input(format!("update {} ({} {}): {e}", i + 1, up.u, up.v)))?;
        let record = report.to_record(|w| labels.label(w));
        serde_json::to_writer(&mut log, &record).map_err(|e| write_err(e.into()))?;
        log.write_all(b"\n").map_err(write_err)?;
    }
    log.flush().map_err(write_err)?;
    drop(log);
    let mut out = sink(args.out.as_deref())?;
    write_core_dump(&mut out, dc.graph(), dc.cores(), &labels).map_err(write_err)?;
    out.flush().map_err(write_err)
}

fn bench(args: &BenchArgs) -> Result<(), Failure> {
    let (graph, labels, dataset) = match (&args.graph, args.gen_nodes) {
        (Some(path), _) => {
            let loaded = read_graph(path)?;
            let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            (loaded.graph, loaded.labels, name)
        }
        (None, Some(n)) => {
            let g = generate_power_law(n, args.mdeg, args.seed).map_err(input("--gen-nodes"))?;
            let labels = NodeLabels::identity(g.capacity());
            (g, labels, format!("powerlaw-{n}-{}", args.mdeg))
        }
        (None, None) => unreachable!("clap requires one of --graph, --gen-nodes"),
    };
    let cfg = TrialConfig {
        num_deletions: args.dels,
        num_insertions: args.inss,
        algorithms: args.variants.clone(),
        rng_seed: args.seed,
        warmup: args.warmup,
    };
    let report = run_trial(&graph, &cfg).map_err(|e| match e {
        coremaint::harness::HarnessError::Divergence { .. } => Failure::Invariant(e.to_string()),
        other => Failure::Input(other.to_string()),
    })?;
    let dataset = args.dataset.clone().unwrap_or(dataset);
    let mut out = sink(args.out.as_deref())?;
    write_csv(&mut out, &dataset, &report).map_err(write_err)?;
    out.flush().map_err(write_err)?;
    if let Some(path) = &args.log {
        let mut log = sink(Some(path))?;
        write_update_log(&mut log, &report, &labels).map_err(write_err)?;
        log.flush().map_err(write_err)?;
    }
    if !args.breakeven.is_empty() {
        let rows = breakeven(&report, Variant::XYPrune, &args.breakeven)
            .map_err(|e| Failure::Input(format!("--breakeven needs B and XY in --variants: {e}")))?;
        let mut err = io::stderr().lock();
        writeln!(err, "batch,incremental_ms,recompute_ms,winner").map_err(write_err)?;
        for r in rows {
            let winner = if r.incremental_wins { "XY" } else { "B" };
            writeln!(err, "{},{:.6},{:.6},{winner}", r.batch, r.incremental_ms, r.recompute_ms).map_err(write_err)?;
        }
    }
    Ok(())
}

fn gen(nodes: usize, mdeg: usize, seed: u64, model: Model, out: Option<&Path>) -> Result<(), Failure> {
    let g = match model {
        Model::PowerLaw => generate_power_law(nodes, mdeg, seed),
        Model::Ba => generate_barabasi_albert(nodes, mdeg, seed),
    }
    .map_err(input("gen"))?;
    let mut w = sink(out)?;
    write_edge_list(&mut w, &g, &NodeLabels::identity(g.capacity())).map_err(write_err)?;
    w.flush().map_err(write_err)
}

fn check_state(g: &Graph, cs: &coremaint::CoreState, brute: bool) -> Result<(), String> {
    g.validate().map_err(|e| e.to_string())?;
    let fresh = decompose(g);
    if let Some((v, have, want)) = cs.diff(&fresh).first() {
        return Err(format!("node {v}: maintained core {have}, recomputed {want}"));
    }
    if let Some(v) = check_xy_bounds(g, cs) {
        return Err(format!("node {v} violates Y <= C <= X <= D"));
    }
    check_nested_cores(g, cs)?;
    if brute && brute_force_core(g) != fresh {
        return Err("bucket decomposition disagrees with brute force".into());
    }
    Ok(())
}

fn validate(graph: &Path, updates: Option<&Path>, variants: &[Algorithm]) -> Result<(), Failure> {
    let loaded = read_graph(graph)?;
    let brute = loaded.graph.num_nodes() <= BRUTE_FORCE_LIMIT;
    let cs = decompose(&loaded.graph);
    check_state(&loaded.graph, &cs, brute).map_err(|e| Failure::Invariant(format!("initial graph: {e}")))?;
    let mut applied = 0;
    if let Some(path) = updates {
        let script = read_updates(path)?;
        for &alg in variants {
            let mut labels = loaded.labels.clone();
            let mut dc = DynamicCore::new(loaded.graph.clone(), alg);
            for (i, up) in script.iter().enumerate() {
                let (u, v) = resolve(&mut dc, &mut labels, up, i + 1)?;
                let report = dc
                    .apply(kind(up.op), u, v)
                    .map_err(|e| Failure::Input(format!("update {} ({} {}): {e}", i + 1, up.u, up.v)))?;
                if let Some(ch) = report.changed.iter().find(|ch| ch.old.abs_diff(ch.new) != 1) {
                    return Err(Failure::Invariant(format!(
                        "{alg} update {}: node {} moved {} -> {}",
                        i + 1,
                        ch.node,
                        ch.old,
                        ch.new
                    )));
                }
                check_state(dc.graph(), dc.cores(), false)
                    .map_err(|e| Failure::Invariant(format!("{alg} after update {}: {e}", i + 1)))?;
            }
        }
        applied = script.len();
    }
    println!(
        "ok: {} nodes, {} edges, {} updates x {} variants checked{}",
        loaded.graph.num_nodes(),
        loaded.graph.num_edges(),
        applied,
        if updates.is_some() { variants.len() } else { 0 },
        if brute { ", brute force agrees" } else { "" }
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Cores { graph, out } => cores(graph, out.as_deref()),
        Command::Update(args) => update(args),
        Command::Bench(args) => bench(args),
        Command::Gen { nodes, mdeg, seed, model, out } => gen(*nodes, *mdeg, *seed, *model, out.as_deref()),
        Command::Validate { graph, updates, variants } => validate(graph, updates.as_deref(), variants),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Closed => {}
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Invariant(m) => eprintln!("invariant violated: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
