//! Benchmark protocol: a seeded stream of random deletions followed by
//! random insertions, replayed once per algorithm on private graph copies.

use std::io::{self, Write};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;
use serde::Serialize;
use thiserror::Error;

use crate::decompose::{decompose, CoreState};
use crate::graph::{Graph, GraphError, NodeId};
use crate::io::NodeLabels;
use crate::maintain::{Algorithm, DynamicCore, UpdateKind, UpdateReport, Variant};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialConfig {
    pub num_deletions: usize,
    pub num_insertions: usize,
    pub algorithms: Vec<Algorithm>,
    pub rng_seed: u64,
    /// Extra deletions replayed before the timed stream and left out of
    /// every average.
    pub warmup: usize,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            num_deletions: 100,
            num_insertions: 100,
            algorithms: Algorithm::ALL.to_vec(),
            rng_seed: 0,
            warmup: 0,
        }
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("graph has {available} edges, trial needs {needed} deletions")]
    InsufficientEdges { needed: usize, available: usize },
    #[error("could not find {needed} absent node pairs to insert")]
    InsufficientPairs { needed: usize },
    #[error("no algorithms requested")]
    NoAlgorithms,
    #[error("algorithm {0} missing from report")]
    MissingAlgorithm(Algorithm),
    #[error("algorithms {a} and {b} diverged: {what}")]
    Divergence { a: Algorithm, b: Algorithm, what: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StreamUpdate {
    pub kind: UpdateKind,
    pub u: NodeId,
    pub v: NodeId,
}

/// An update stream: `warmup` untimed deletions, then the timed deletions,
/// then the timed insertions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateStream {
    pub warmup: usize,
    pub updates: Vec<StreamUpdate>,
}

impl UpdateStream {
    pub fn timed(&self) -> &[StreamUpdate] {
        &self.updates[self.warmup..]
    }
}

fn pair_key(u: NodeId, v: NodeId) -> u64 {
    let (a, b) = if u.0 < v.0 { (u.0, v.0) } else { (v.0, u.0) };
    ((a as u64) << 32) | b as u64
}

/// Draws the update stream for `g`. Deleted edges are distinct existing
/// edges; inserted pairs are distinct, absent from `g`, and never one of
/// the deleted edges, so every insertion is a fresh pair.
pub fn generate_stream(g: &Graph, cfg: &TrialConfig) -> Result<UpdateStream, HarnessError> {
    let deletions = cfg.warmup + cfg.num_deletions;
    let mut edges = g.sorted_edges();
    if edges.len() < deletions {
        return Err(HarnessError::InsufficientEdges { needed: deletions, available: edges.len() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let (chosen, _) = edges.partial_shuffle(&mut rng, deletions);
    let mut updates: Vec<StreamUpdate> =
        chosen.iter().map(|&(u, v)| StreamUpdate { kind: UpdateKind::Delete, u, v }).collect();

    let mut taken: FxHashSet<u64> = chosen.iter().map(|&(u, v)| pair_key(u, v)).collect();
    let nodes: Vec<NodeId> = g.nodes().collect();
    let mut inserted = 0;
    let mut attempts = 0usize;
    let budget = 1000 + 1000 * cfg.num_insertions;
    while inserted < cfg.num_insertions {
        if nodes.len() < 2 || attempts >= budget {
            return Err(HarnessError::InsufficientPairs { needed: cfg.num_insertions });
        }
        attempts += 1;
        let u = nodes[rng.gen_range(0..nodes.len())];
        let v = nodes[rng.gen_range(0..nodes.len())];
        if u == v || g.has_edge(u, v) || !taken.insert(pair_key(u, v)) {
            continue;
        }
        updates.push(StreamUpdate { kind: UpdateKind::Insert, u, v });
        inserted += 1;
    }
    Ok(UpdateStream { warmup: cfg.warmup, updates })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CandidateStats {
    pub min: usize,
    pub median: usize,
    pub max: usize,
    pub mean: f64,
}

impl CandidateStats {
    fn of(sizes: &mut [usize]) -> Option<Self> {
        if sizes.is_empty() {
            return None;
        }
        sizes.sort_unstable();
        let total: usize = sizes.iter().sum();
        Some(CandidateStats {
            min: sizes[0],
            median: sizes[sizes.len() / 2],
            max: sizes[sizes.len() - 1],
            mean: total as f64 / sizes.len() as f64,
        })
    }
}

/// Timings and counters of one algorithm over the timed part of a stream.
#[derive(Debug, Clone)]
pub struct AlgorithmRun {
    pub algorithm: Algorithm,
    pub avg_del_ms: f64,
    pub avg_ins_ms: f64,
    /// Mean of the deletion and insertion averages (or the one that exists).
    pub avg_upd_ms: f64,
    /// Median over five consecutive blocks of the per-block mean update time.
    pub mom_upd_ms: f64,
    /// `avg_upd_ms` of the recompute baseline divided by this one.
    pub speedup: Option<f64>,
    /// Candidate-set sizes, incremental algorithms only.
    pub candidates: Option<CandidateStats>,
    /// Reports for the timed updates, in stream order.
    pub reports: Vec<UpdateReport>,
    pub final_cores: CoreState,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub nodes: usize,
    pub edges: usize,
    pub config: TrialConfig,
    pub stream: UpdateStream,
    pub runs: Vec<AlgorithmRun>,
}

impl BenchReport {
    pub fn run(&self, algorithm: Algorithm) -> Option<&AlgorithmRun> {
        self.runs.iter().find(|r| r.algorithm == algorithm)
    }

    pub fn speedup(&self, algorithm: Algorithm) -> Option<f64> {
        self.run(algorithm).and_then(|r| r.speedup)
    }

    pub fn final_cores(&self) -> &CoreState {
        &self.runs[0].final_cores
    }
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = xs.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    (n > 0).then(|| sum / n as f64)
}

fn median_of_means(samples: &[f64]) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    let blocks = samples.len().min(5);
    let mut means: Vec<f64> = (0..blocks)
        .map(|b| {
            let lo = b * samples.len() / blocks;
            let hi = (b + 1) * samples.len() / blocks;
            samples[lo..hi].iter().sum::<f64>() / (hi - lo) as f64
        })
        .collect();
    means.sort_by(f64::total_cmp);
    means[blocks / 2]
}

fn replay(g: &Graph, algorithm: Algorithm, stream: &UpdateStream) -> Result<AlgorithmRun, HarnessError> {
    let mut dc = DynamicCore::new(g.clone(), algorithm);
    let mut reports = Vec::with_capacity(stream.timed().len());
    let mut elapsed = Vec::with_capacity(stream.timed().len());
    for (i, up) in stream.updates.iter().enumerate() {
        let start = Instant::now();
        let report = dc.apply(up.kind, up.u, up.v)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        if i >= stream.warmup {
            elapsed.push(ms);
            reports.push(report);
        }
    }
    let of_kind = |k: UpdateKind| mean(reports.iter().zip(&elapsed).filter(|(r, _)| r.kind == k).map(|(_, &ms)| ms));
    let del = of_kind(UpdateKind::Delete);
    let ins = of_kind(UpdateKind::Insert);
    let avg_upd_ms = mean(del.into_iter().chain(ins)).unwrap_or(0.0);
    let candidates = match algorithm {
        Algorithm::Recompute => None,
        Algorithm::Incremental(_) => {
            CandidateStats::of(&mut reports.iter().map(|r| r.candidate_count).collect::<Vec<_>>())
        }
    };
    let (_, final_cores) = dc.into_parts();
    Ok(AlgorithmRun {
        algorithm,
        avg_del_ms: del.unwrap_or(0.0),
        avg_ins_ms: ins.unwrap_or(0.0),
        avg_upd_ms,
        mom_upd_ms: median_of_means(&elapsed),
        speedup: None,
        candidates,
        reports,
        final_cores,
    })
}

fn check_agreement(a: &AlgorithmRun, b: &AlgorithmRun) -> Result<(), HarnessError> {
    let diverged = |what: String| HarnessError::Divergence { a: a.algorithm, b: b.algorithm, what };
    for (i, (ra, rb)) in a.reports.iter().zip(&b.reports).enumerate() {
        if ra.changed_nodes() != rb.changed_nodes() {
            return Err(diverged(format!("changed sets differ at timed update {i}")));
        }
    }
    if let Some(&(v, ca, cb)) = a.final_cores.diff(&b.final_cores).first() {
        return Err(diverged(format!("final core of node {v}: {ca} vs {cb}")));
    }
    Ok(())
}

/// Replays one stream per requested algorithm, each on its own copy of
/// `g`, and checks that all of them agree on every changed set and on the
/// final core numbers.
pub fn run_trial(g: &Graph, cfg: &TrialConfig) -> Result<BenchReport, HarnessError> {
    if cfg.algorithms.is_empty() {
        return Err(HarnessError::NoAlgorithms);
    }
    let stream = generate_stream(g, cfg)?;
    let mut runs = Vec::with_capacity(cfg.algorithms.len());
    for &alg in &cfg.algorithms {
        runs.push(replay(g, alg, &stream)?);
    }
    for pair in runs.windows(2) {
        check_agreement(&pair[0], &pair[1])?;
    }
    let base = runs.iter().find(|r| r.algorithm == Algorithm::Recompute).map(|r| r.avg_upd_ms);
    if let Some(base) = base {
        for r in &mut runs {
            r.speedup = Some(if r.avg_upd_ms > 0.0 { base / r.avg_upd_ms } else { f64::INFINITY });
        }
    }
    Ok(BenchReport { nodes: g.num_nodes(), edges: g.num_edges(), config: cfg.clone(), stream, runs })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BreakevenRow {
    pub batch: usize,
    /// `batch` single-edge incremental updates.
    pub incremental_ms: f64,
    /// One recomputation after the whole batch.
    pub recompute_ms: f64,
    pub incremental_wins: bool,
}

/// Compares `r` incremental updates against a single recomputation for each
/// batch size `r`. Incremental maintenance wins exactly while `r` stays
/// below the measured speedup ratio.
pub fn breakeven(report: &BenchReport, variant: Variant, batches: &[usize]) -> Result<Vec<BreakevenRow>, HarnessError> {
    let inc = report
        .run(Algorithm::Incremental(variant))
        .ok_or(HarnessError::MissingAlgorithm(Algorithm::Incremental(variant)))?;
    let base = report.run(Algorithm::Recompute).ok_or(HarnessError::MissingAlgorithm(Algorithm::Recompute))?;
    Ok(batches
        .iter()
        .map(|&r| {
            let incremental_ms = r as f64 * inc.avg_upd_ms;
            BreakevenRow {
                batch: r,
                incremental_ms,
                recompute_ms: base.avg_upd_ms,
                incremental_wins: incremental_ms < base.avg_upd_ms,
            }
        })
        .collect())
}

#[derive(Serialize)]
struct CsvRow<'a> {
    dataset: &'a str,
    variant: &'static str,
    avg_del_ms: f64,
    avg_ins_ms: f64,
    avg_upd_ms: f64,
    speedup: Option<f64>,
}

/// Writes one CSV row per algorithm, preceded by `#` comment lines that
/// describe the stream.
pub fn write_csv<W: Write>(mut w: W, dataset: &str, report: &BenchReport) -> io::Result<()> {
    let cfg = &report.config;
    writeln!(w, "# nodes={} edges={} seed={}", report.nodes, report.edges, cfg.rng_seed)?;
    writeln!(
        w,
        "# {} deletions of random existing edges, then {} insertions of fresh random absent pairs (deleted edges excluded), {} untimed warmup deletions",
        cfg.num_deletions, cfg.num_insertions, cfg.warmup
    )?;
    let mut out = csv::Writer::from_writer(w);
    for r in &report.runs {
        out.serialize(CsvRow {
            dataset,
            variant: r.algorithm.code(),
            avg_del_ms: r.avg_del_ms,
            avg_ins_ms: r.avg_ins_ms,
            avg_upd_ms: r.avg_upd_ms,
            speedup: r.speedup,
        })?;
    }
    out.flush()
}

/// Per-update JSON-lines log of every run in `report`.
pub fn write_update_log<W: Write>(mut w: W, report: &BenchReport, labels: &NodeLabels) -> io::Result<()> {
    for run in &report.runs {
        for r in &run.reports {
            serde_json::to_writer(&mut w, &r.to_record(|v| labels.label(v)))?;
            w.write_all(b"\n")?;
        }
    }
    Ok(())
}

/// Recomputes from scratch and compares against `cs`; `None` when equal.
pub fn first_mismatch(g: &Graph, cs: &CoreState) -> Option<(NodeId, u32, u32)> {
    cs.diff(&decompose(g)).into_iter().next()
}
