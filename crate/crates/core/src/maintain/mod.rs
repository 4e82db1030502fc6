//! Incremental core-number maintenance for single edge insertions and
//! deletions.
//!
//! Every update follows the same three steps: find the candidate nodes whose
//! core might move (a search over the nodes whose core equals the pivot
//! `c = min(C_u, C_v)`), recolor candidates until a fixpoint separates the
//! nodes that really move, then write `c + 1` (insertion) or `c - 1`
//! (deletion). The [`Variant`] picks the candidate search.

mod coloring;
mod recolor;
mod workspace;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

pub use coloring::{color, x_prune_color, xy_prune_color, y_prune_color};
pub use recolor::{recolor_delete, recolor_insert, update_delete, update_insert};
pub use workspace::UpdateWorkspace;

use crate::decompose::{compute_x, compute_y, decompose, CoreState};
use crate::graph::{Graph, GraphError, NodeId};

/// Candidate-search strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Plain search over the whole equal-core region (`N`).
    Basic,
    /// Upper-bound pruning (`X`).
    XPrune,
    /// Lower-bound pruning (`Y`).
    YPrune,
    /// Both prunings (`XY`).
    XYPrune,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Basic, Variant::XPrune, Variant::YPrune, Variant::XYPrune];

    pub fn code(self) -> &'static str {
        match self {
            Variant::Basic => "N",
            Variant::XPrune => "X",
            Variant::YPrune => "Y",
            Variant::XYPrune => "XY",
        }
    }
}

/// A way of keeping core numbers current: full recomputation (`B`) or one
/// of the incremental variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Recompute,
    Incremental(Variant),
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Recompute,
        Algorithm::Incremental(Variant::Basic),
        Algorithm::Incremental(Variant::XPrune),
        Algorithm::Incremental(Variant::YPrune),
        Algorithm::Incremental(Variant::XYPrune),
    ];

    pub fn code(self) -> &'static str {
        match self {
            Algorithm::Recompute => "B",
            Algorithm::Incremental(v) => v.code(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown algorithm {0:?}, expected one of B, N, X, Y, XY")]
pub struct UnknownAlgorithm(pub String);

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "B" => Algorithm::Recompute,
            "N" => Algorithm::Incremental(Variant::Basic),
            "X" => Algorithm::Incremental(Variant::XPrune),
            "Y" => Algorithm::Incremental(Variant::YPrune),
            "XY" => Algorithm::Incremental(Variant::XYPrune),
            _ => return Err(UnknownAlgorithm(s.to_string())),
        })
    }
}

impl FromStr for Variant {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.parse::<Algorithm>()? {
            Algorithm::Incremental(v) => Ok(v),
            Algorithm::Recompute => Err(UnknownAlgorithm(s.to_string())),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UpdateKind {
    Insert,
    Delete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoreChange {
    pub node: NodeId,
    pub old: u32,
    pub new: u32,
}

/// Outcome of one maintenance call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateReport {
    pub kind: UpdateKind,
    pub algorithm: Algorithm,
    pub u: NodeId,
    pub v: NodeId,
    /// Pivot `min(C_u, C_v)` before the update.
    pub c: u32,
    pub candidate_count: usize,
    pub recolor_rounds: usize,
    /// Search branches cut by pruning.
    pub pruned: usize,
    pub changed: Vec<CoreChange>,
    pub duration: Duration,
}

impl UpdateReport {
    /// Changed node ids, sorted.
    pub fn changed_nodes(&self) -> Vec<NodeId> {
        let mut v: Vec<_> = self.changed.iter().map(|ch| ch.node).collect();
        v.sort_unstable();
        v
    }

    /// JSON-lines record, with node ids translated by `label`.
    pub fn to_record(&self, label: impl Fn(NodeId) -> u64) -> UpdateRecord {
        let mut changed: Vec<[u64; 3]> =
            self.changed.iter().map(|ch| [label(ch.node), ch.old as u64, ch.new as u64]).collect();
        changed.sort_unstable();
        UpdateRecord {
            kind: self.kind,
            u: label(self.u),
            v: label(self.v),
            c: self.c,
            variant: self.algorithm.code(),
            candidates: self.candidate_count,
            rounds: self.recolor_rounds,
            pruned: self.pruned,
            changed,
            micros: self.duration.as_micros() as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpdateRecord {
    pub kind: UpdateKind,
    pub u: u64,
    pub v: u64,
    pub c: u32,
    pub variant: &'static str,
    pub candidates: usize,
    pub rounds: usize,
    pub pruned: usize,
    pub changed: Vec<[u64; 3]>,
    pub micros: u64,
}

fn report(
    kind: UpdateKind,
    variant: Variant,
    (u, v): (NodeId, NodeId),
    c: u32,
    ws: &UpdateWorkspace,
    changed: Vec<CoreChange>,
    start: Instant,
) -> UpdateReport {
    UpdateReport {
        kind,
        algorithm: Algorithm::Incremental(variant),
        u,
        v,
        c,
        candidate_count: ws.candidates().len(),
        recolor_rounds: ws.rounds(),
        pruned: ws.pruned(),
        changed,
        duration: start.elapsed(),
    }
}

/// Inserts `(u, v)` and brings `cs` up to date. `cs` must hold the exact
/// core numbers of `g` on entry. On error neither `g` nor `cs` is touched.
pub fn insert_and_maintain(
    g: &mut Graph,
    cs: &mut CoreState,
    ws: &mut UpdateWorkspace,
    u: NodeId,
    v: NodeId,
    variant: Variant,
) -> Result<UpdateReport, GraphError> {
    let start = Instant::now();
    g.insert_edge(u, v)?;
    cs.grow_to(g.capacity());
    ws.begin(g.capacity());

    let (cu, cv) = (cs.get(u), cs.get(v));
    let c = cu.min(cv);
    let g_ref: &Graph = g;
    let run = |ws: &mut UpdateWorkspace, seed: NodeId| match variant {
        Variant::Basic => color(g_ref, cs, ws, seed, c),
        Variant::XPrune => x_prune_color(g_ref, cs, ws, seed, c),
        Variant::YPrune => y_prune_color(g_ref, cs, ws, seed, Some(seed), c),
        Variant::XYPrune => xy_prune_color(g_ref, cs, ws, seed, seed, c),
    };

    if cu != cv {
        run(ws, if cu < cv { u } else { v });
    } else {
        match variant {
            // `u` reaches `v` over the new edge.
            Variant::Basic | Variant::XPrune => run(ws, u),
            Variant::YPrune | Variant::XYPrune => {
                // Equal cores move together or not at all, and a node with
                // at most `c` neighbors of core >= c cannot move.
                let stuck =
                    variant == Variant::XYPrune && (compute_x(g_ref, cs, u) <= c || compute_x(g_ref, cs, v) <= c);
                if !stuck {
                    let u_saturated = compute_y(g_ref, cs, u) >= c;
                    let v_saturated = compute_y(g_ref, cs, v) >= c;
                    match (u_saturated, v_saturated) {
                        (true, false) => run(ws, v),
                        (false, true) | (false, false) => run(ws, u),
                        (true, true) => {
                            run(ws, u);
                            run(ws, v);
                        }
                    }
                }
            }
        }
    }

    recolor_insert(g_ref, cs, ws, c);
    let changed = update_insert(cs, ws, c);
    Ok(report(UpdateKind::Insert, variant, (u, v), c, ws, changed, start))
}

/// Deletes `(u, v)` and brings `cs` up to date. `cs` must hold the exact
/// core numbers of `g` on entry. On error neither `g` nor `cs` is touched.
///
/// The X-pruned variants inspect the endpoints first, after the edge is
/// gone but before any core number changes: an endpoint that still has at
/// least `c` neighbors of core `>= c` keeps its core, and so does its whole
/// equal-core region.
pub fn delete_and_maintain(
    g: &mut Graph,
    cs: &mut CoreState,
    ws: &mut UpdateWorkspace,
    u: NodeId,
    v: NodeId,
    variant: Variant,
) -> Result<UpdateReport, GraphError> {
    let start = Instant::now();
    g.delete_edge(u, v)?;
    ws.begin(g.capacity());

    let (cu, cv) = (cs.get(u), cs.get(v));
    let c = cu.min(cv);
    let g_ref: &Graph = g;
    let run = |ws: &mut UpdateWorkspace, seed: NodeId| match variant {
        Variant::Basic | Variant::XPrune => color(g_ref, cs, ws, seed, c),
        Variant::YPrune | Variant::XYPrune => y_prune_color(g_ref, cs, ws, seed, None, c),
    };
    // Search from `u`, then from `v` unless the first search already
    // colored it.
    let run_both = |ws: &mut UpdateWorkspace| {
        run(ws, u);
        if !ws.is_colored(v) {
            ws.reset_visited();
            run(ws, v);
        }
    };

    let (u_moves, v_moves) = match variant {
        Variant::Basic | Variant::YPrune => (true, true),
        Variant::XPrune | Variant::XYPrune => (compute_x(g_ref, cs, u) < c, compute_x(g_ref, cs, v) < c),
    };

    let searched = if cu > cv {
        v_moves.then(|| run(ws, v)).is_some()
    } else if cu < cv {
        u_moves.then(|| run(ws, u)).is_some()
    } else {
        match (u_moves, v_moves) {
            (true, true) => {
                run_both(ws);
                true
            }
            (true, false) => {
                run(ws, u);
                true
            }
            (false, true) => {
                run(ws, v);
                true
            }
            (false, false) => false,
        }
    };

    let changed = if searched {
        recolor_delete(g_ref, cs, ws, c);
        update_delete(cs, ws, c)
    } else {
        Vec::new()
    };
    Ok(report(UpdateKind::Delete, variant, (u, v), c, ws, changed, start))
}

/// Baseline update: apply the edge change, then recompute every core number.
pub fn recompute_and_report(
    g: &mut Graph,
    cs: &mut CoreState,
    kind: UpdateKind,
    u: NodeId,
    v: NodeId,
) -> Result<UpdateReport, GraphError> {
    let start = Instant::now();
    match kind {
        UpdateKind::Insert => g.insert_edge(u, v)?,
        UpdateKind::Delete => g.delete_edge(u, v)?,
    }
    let fresh = decompose(g);
    let duration = start.elapsed();
    cs.grow_to(g.capacity());
    let c = cs.get(u).min(cs.get(v));
    let changed = cs.diff(&fresh).into_iter().map(|(node, old, new)| CoreChange { node, old, new }).collect();
    *cs = fresh;
    Ok(UpdateReport {
        kind,
        algorithm: Algorithm::Recompute,
        u,
        v,
        c,
        candidate_count: 0,
        recolor_rounds: 0,
        pruned: 0,
        changed,
        duration,
    })
}

/// A graph together with its maintained core numbers.
#[derive(Debug, Clone)]
pub struct DynamicCore {
    graph: Graph,
    cores: CoreState,
    workspace: UpdateWorkspace,
    algorithm: Algorithm,
}

impl DynamicCore {
    /// Decomposes `graph` once and keeps the result current from then on.
    pub fn new(graph: Graph, algorithm: Algorithm) -> Self {
        let cores = decompose(&graph);
        let workspace = UpdateWorkspace::new(graph.capacity());
        DynamicCore { graph, cores, workspace, algorithm }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cores(&self) -> &CoreState {
        &self.cores
    }

    pub fn core(&self, v: NodeId) -> u32 {
        self.cores.get(v)
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    /// Candidates found by the most recent incremental update.
    pub fn workspace(&self) -> &UpdateWorkspace {
        &self.workspace
    }

    pub fn into_parts(self) -> (Graph, CoreState) {
        (self.graph, self.cores)
    }

    pub fn apply(&mut self, kind: UpdateKind, u: NodeId, v: NodeId) -> Result<UpdateReport, GraphError> {
        match (self.algorithm, kind) {
            (Algorithm::Recompute, _) => recompute_and_report(&mut self.graph, &mut self.cores, kind, u, v),
            (Algorithm::Incremental(var), UpdateKind::Insert) => {
                insert_and_maintain(&mut self.graph, &mut self.cores, &mut self.workspace, u, v, var)
            }
            (Algorithm::Incremental(var), UpdateKind::Delete) => {
                delete_and_maintain(&mut self.graph, &mut self.cores, &mut self.workspace, u, v, var)
            }
        }
    }

    pub fn insert_edge(&mut self, u: NodeId, v: NodeId) -> Result<UpdateReport, GraphError> {
        self.apply(UpdateKind::Insert, u, v)
    }

    pub fn delete_edge(&mut self, u: NodeId, v: NodeId) -> Result<UpdateReport, GraphError> {
        self.apply(UpdateKind::Delete, u, v)
    }

    /// Fresh isolated node with core 0.
    pub fn add_node(&mut self) -> NodeId {
        let id = self.graph.add_node();
        self.cores.grow_to(self.graph.capacity());
        id
    }

    /// Removes `u` as a sequence of edge deletions, maintaining cores after
    /// each one, then tombstones it.
    pub fn remove_node(&mut self, u: NodeId) -> Result<Vec<UpdateReport>, GraphError> {
        if !self.graph.is_live(u) {
            return Err(GraphError::UnknownNode(u));
        }
        let mut reports = Vec::with_capacity(self.graph.degree(u));
        while let Some(&w) = self.graph.neighbors(u).last() {
            reports.push(self.delete_edge(u, w)?);
        }
        self.graph.tombstone_isolated(u)?;
        Ok(reports)
    }
}
