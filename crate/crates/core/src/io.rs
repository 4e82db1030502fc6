//! Text formats: edge lists, core dumps and update scripts.
//!
//! Edge lists hold one edge per line as two whitespace-separated integer
//! labels; lines starting with `#` and blank lines are skipped. Labels are
//! remapped to dense [`NodeId`]s in increasing label order, so sorting by
//! node id and sorting by label agree.

use std::collections::HashMap;
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::decompose::CoreState;
use crate::graph::{Graph, NodeId};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn malformed(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Malformed { line, message: message.into() }
}

/// Bidirectional mapping between external labels and dense ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeLabels {
    labels: Vec<u64>,
    index: HashMap<u64, NodeId>,
}

impl NodeLabels {
    /// Identity mapping `i <-> i` for `0..n`.
    pub fn identity(n: usize) -> Self {
        let mut l = NodeLabels::default();
        for i in 0..n {
            l.push(i as u64);
        }
        l
    }

    /// Registers the label for the next dense id. Panics on a repeated label.
    pub fn push(&mut self, label: u64) -> NodeId {
        let id = NodeId::from(self.labels.len());
        let prev = self.index.insert(label, id);
        assert!(prev.is_none(), "label {label} registered twice");
        self.labels.push(label);
        id
    }

    pub fn label(&self, id: NodeId) -> u64 {
        self.labels[id.index()]
    }

    pub fn id(&self, label: u64) -> Option<NodeId> {
        self.index.get(&label).copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Smallest label not yet in use that is larger than every existing one.
    pub fn next_free_label(&self) -> u64 {
        self.labels.iter().max().map_or(0, |&m| m + 1)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadSummary {
    pub lines: usize,
    pub duplicates: usize,
    pub self_loops: usize,
}

#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub labels: NodeLabels,
    pub summary: LoadSummary,
}

fn parse_label(tok: &str, line: usize) -> Result<u64, ParseError> {
    tok.parse::<u64>().map_err(|_| malformed(line, format!("expected a non-negative integer, found {tok:?}")))
}

fn parse_pair<'a, I>(mut toks: I, line: usize) -> Result<(u64, u64), ParseError>
where
    I: Iterator<Item = &'a str>,
{
    let a = toks.next().ok_or_else(|| malformed(line, "expected two node ids"))?;
    let b = toks.next().ok_or_else(|| malformed(line, "expected two node ids"))?;
    if let Some(extra) = toks.next() {
        return Err(malformed(line, format!("unexpected trailing token {extra:?}")));
    }
    Ok((parse_label(a, line)?, parse_label(b, line)?))
}

fn is_skipped(line: &str) -> bool {
    let t = line.trim_start();
    t.is_empty() || t.starts_with('#')
}

/// Parses an edge list. Self-loops and repeated edges (in either
/// orientation) are dropped and counted; nodes that only appear on dropped
/// lines are still retained as isolated nodes.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<LoadedGraph, ParseError> {
    let mut raw = Vec::new();
    let mut summary = LoadSummary::default();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if is_skipped(&line) {
            continue;
        }
        let pair = parse_pair(line.split_whitespace(), i + 1)?;
        summary.lines += 1;
        raw.push(pair);
    }

    let mut all: Vec<u64> = raw.iter().flat_map(|&(a, b)| [a, b]).collect();
    all.sort_unstable();
    all.dedup();
    let mut labels = NodeLabels::default();
    for &l in &all {
        labels.push(l);
    }

    let mut graph = Graph::with_nodes(labels.len());
    for (a, b) in raw {
        if a == b {
            summary.self_loops += 1;
            continue;
        }
        let (u, v) = (labels.id(a).unwrap(), labels.id(b).unwrap());
        if graph.insert_edge(u, v).is_err() {
            summary.duplicates += 1;
        }
    }
    Ok(LoadedGraph { graph, labels, summary })
}

pub fn load_edge_list_str(text: &str) -> Result<LoadedGraph, ParseError> {
    load_edge_list(text.as_bytes())
}

/// Writes `min(u,v) max(u,v)` per edge, sorted by label pair.
pub fn write_edge_list<W: Write>(mut w: W, graph: &Graph, labels: &NodeLabels) -> io::Result<()> {
    let mut pairs: Vec<(u64, u64)> = graph
        .edges()
        .map(|(u, v)| {
            let (a, b) = (labels.label(u), labels.label(v));
            (a.min(b), a.max(b))
        })
        .collect();
    pairs.sort_unstable();
    for (a, b) in pairs {
        writeln!(w, "{a} {b}")?;
    }
    Ok(())
}

/// Writes `label core` for each live node, sorted by label.
pub fn write_core_dump<W: Write>(mut w: W, graph: &Graph, cores: &CoreState, labels: &NodeLabels) -> io::Result<()> {
    let mut rows: Vec<(u64, u32)> = graph.nodes().map(|v| (labels.label(v), cores.get(v))).collect();
    rows.sort_unstable();
    for (label, core) in rows {
        writeln!(w, "{label} {core}")?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateOp {
    Insert,
    Delete,
}

/// One line of an update script: `i u v` or `d u v`, in external labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeUpdate {
    pub op: UpdateOp,
    pub u: u64,
    pub v: u64,
}

pub fn parse_updates<R: BufRead>(reader: R) -> Result<Vec<EdgeUpdate>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if is_skipped(&line) {
            continue;
        }
        let mut toks = line.split_whitespace();
        let op = match toks.next() {
            Some("i") => UpdateOp::Insert,
            Some("d") => UpdateOp::Delete,
            Some(other) => return Err(malformed(i + 1, format!("unknown opcode {other:?}, expected 'i' or 'd'"))),
            None => unreachable!("blank lines are skipped"),
        };
        let (u, v) = parse_pair(toks, i + 1)?;
        out.push(EdgeUpdate { op, u, v });
    }
    Ok(out)
}

pub fn write_updates<W: Write>(mut w: W, updates: &[EdgeUpdate]) -> io::Result<()> {
    for up in updates {
        let op = match up.op {
            UpdateOp::Insert => 'i',
            UpdateOp::Delete => 'd',
        };
        writeln!(w, "{op} {} {}", up.u, up.v)?;
    }
    Ok(())
}
