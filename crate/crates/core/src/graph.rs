//! Mutable undirected simple graph over dense node ids.
//!
//! Adjacency is stored as one unordered `Vec` per node, so insertion is an
//! amortized push and deletion is a linear scan followed by `swap_remove`.
//! A hashed edge set backs duplicate-edge rejection.

use std::fmt;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense node index in `[0, n)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for NodeId {
    #[inline]
    fn from(i: usize) -> Self {
        NodeId(i as u32)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("unknown or removed node {0}")]
    UnknownNode(NodeId),
    #[error("edge ({0}, {1}) already present")]
    DuplicateEdge(NodeId, NodeId),
    #[error("edge ({0}, {1}) not present")]
    MissingEdge(NodeId, NodeId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph invariant violated: {0}")]
pub struct InvariantViolation(pub String);

#[inline]
fn edge_key(u: NodeId, v: NodeId) -> u64 {
    let (a, b) = if u <= v { (u, v) } else { (v, u) };
    ((a.0 as u64) << 32) | b.0 as u64
}

#[derive(Debug, Clone, Default)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    alive: Vec<bool>,
    edges: FxHashSet<u64>,
    live_nodes: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with `n` live, isolated nodes `0..n`.
    pub fn with_nodes(n: usize) -> Self {
        Graph { adjacency: vec![Vec::new(); n], alive: vec![true; n], edges: FxHashSet::default(), live_nodes: n }
    }

    /// Builds a graph from an edge iterator, silently skipping self-loops and
    /// duplicates. Every id below `n` is a live node.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut g = Graph::with_nodes(n);
        for (u, v) in edges {
            let _ = g.insert_edge(u, v);
        }
        g
    }

    /// Size of the id space, including tombstoned ids.
    #[inline]
    pub fn capacity(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn num_nodes(&self) -> usize {
        self.live_nodes
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn is_live(&self, v: NodeId) -> bool {
        self.alive.get(v.index()).copied().unwrap_or(false)
    }

    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v.index()]
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v.index()].len()
    }

    #[inline]
    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.edges.contains(&edge_key(u, v))
    }

    /// Live node ids in increasing order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.alive.iter().enumerate().filter(|(_, &a)| a).map(|(i, _)| NodeId::from(i))
    }

    /// Every undirected edge once, as `(min, max)`, in no particular order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(i, adj)| {
            let u = NodeId::from(i);
            adj.iter().filter(move |&&v| u < v).map(move |&v| (u, v))
        })
    }

    /// Edges as `(min, max)` pairs sorted lexicographically.
    pub fn sorted_edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut e: Vec<_> = self.edges().collect();
        e.sort_unstable();
        e
    }

    fn check_live(&self, v: NodeId) -> Result<(), GraphError> {
        if self.is_live(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownNode(v))
        }
    }

    pub fn insert_edge(&mut self, u: NodeId, v: NodeId) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.check_live(u)?;
        self.check_live(v)?;
        if !self.edges.insert(edge_key(u, v)) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.adjacency[u.index()].push(v);
        self.adjacency[v.index()].push(u);
        Ok(())
    }

    pub fn delete_edge(&mut self, u: NodeId, v: NodeId) -> Result<(), GraphError> {
        if u == v || !self.is_live(u) || !self.is_live(v) || !self.edges.remove(&edge_key(u, v)) {
            return Err(GraphError::MissingEdge(u, v));
        }
        remove_neighbor(&mut self.adjacency[u.index()], v);
        remove_neighbor(&mut self.adjacency[v.index()], u);
        Ok(())
    }

    /// Appends a fresh isolated node. Ids are never reused.
    pub fn add_node(&mut self) -> NodeId {
        let id = NodeId::from(self.adjacency.len());
        self.adjacency.push(Vec::new());
        self.alive.push(true);
        self.live_nodes += 1;
        id
    }

    /// Deletes every edge incident to `u`, then tombstones `u`.
    ///
    /// `on_edge` runs after each individual edge removal, with the graph in
    /// its intermediate state; dynamic maintenance hooks in here to process
    /// the node deletion as a sequence of edge deletions.
    pub fn remove_node_with<F>(&mut self, u: NodeId, mut on_edge: F) -> Result<Vec<(NodeId, NodeId)>, GraphError>
    where
        F: FnMut(&Graph, NodeId, NodeId),
    {
        self.check_live(u)?;
        let mut removed = Vec::with_capacity(self.degree(u));
        while let Some(&w) = self.adjacency[u.index()].last() {
            self.delete_edge(u, w)?;
            on_edge(self, u, w);
            removed.push((u, w));
        }
        self.alive[u.index()] = false;
        self.live_nodes -= 1;
        Ok(removed)
    }

    pub fn remove_node(&mut self, u: NodeId) -> Result<Vec<(NodeId, NodeId)>, GraphError> {
        self.remove_node_with(u, |_, _, _| {})
    }

    /// Tombstones an already isolated node.
    pub(crate) fn tombstone_isolated(&mut self, u: NodeId) -> Result<(), GraphError> {
        self.check_live(u)?;
        debug_assert!(self.adjacency[u.index()].is_empty());
        self.alive[u.index()] = false;
        self.live_nodes -= 1;
        Ok(())
    }

    /// Checks symmetry, simplicity, the edge-count identity, and that
    /// tombstoned nodes carry no edges.
    pub fn validate(&self) -> Result<(), InvariantViolation> {
        let mut endpoint_total = 0usize;
        for (i, adj) in self.adjacency.iter().enumerate() {
            let u = NodeId::from(i);
            if !self.alive[i] && !adj.is_empty() {
                return Err(InvariantViolation(format!("removed node {u} still has edges")));
            }
            let mut seen = FxHashSet::default();
            for &v in adj {
                if v == u {
                    return Err(InvariantViolation(format!("self-loop at {u}")));
                }
                if v.index() >= self.adjacency.len() || !self.alive[v.index()] {
                    return Err(InvariantViolation(format!("{u} adjacent to dead node {v}")));
                }
                if !seen.insert(v) {
                    return Err(InvariantViolation(format!("parallel edge ({u}, {v})")));
                }
                if !self.adjacency[v.index()].contains(&u) {
                    return Err(InvariantViolation(format!("asymmetric edge ({u}, {v})")));
                }
                if !self.edges.contains(&edge_key(u, v)) {
                    return Err(InvariantViolation(format!("edge ({u}, {v}) missing from edge set")));
                }
            }
            endpoint_total += adj.len();
        }
        if endpoint_total != 2 * self.edges.len() {
            return Err(InvariantViolation(format!(
                "edge count {} but adjacency holds {} endpoints",
                self.edges.len(),
                endpoint_total
            )));
        }
        let live = self.alive.iter().filter(|&&a| a).count();
        if live != self.live_nodes {
            return Err(InvariantViolation(format!("live count {} but {} flagged live", self.live_nodes, live)));
        }
        Ok(())
    }

    /// Copy of the graph with ids relabeled by `perm` (`old -> perm[old]`).
    pub fn permuted(&self, perm: &[NodeId]) -> Graph {
        assert_eq!(perm.len(), self.capacity());
        let mut g = Graph::with_nodes(self.capacity());
        for (i, &alive) in self.alive.iter().enumerate() {
            if !alive {
                g.alive[perm[i].index()] = false;
                g.live_nodes -= 1;
            }
        }
        for (u, v) in self.edges() {
            g.insert_edge(perm[u.index()], perm[v.index()]).expect("permutation must be a bijection");
        }
        g
    }
}

fn remove_neighbor(adj: &mut Vec<NodeId>, v: NodeId) {
    if let Some(pos) = adj.iter().position(|&w| w == v) {
        adj.swap_remove(pos);
    }
}
