//! Static k-core decomposition.
//!
//! [`decompose`] is the linear-time bin-sort peeling; [`brute_force_core`] is
//! a deliberately naive per-k stripping used as an independent reference.

use crate::graph::{Graph, NodeId};

/// Per-node core numbers, indexed by [`NodeId`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoreState {
    core: Vec<u32>,
}

impl CoreState {
    pub fn zeros(n: usize) -> Self {
        CoreState { core: vec![0; n] }
    }

    pub fn from_vec(core: Vec<u32>) -> Self {
        CoreState { core }
    }

    #[inline]
    pub fn get(&self, v: NodeId) -> u32 {
        self.core[v.index()]
    }

    #[inline]
    pub fn set(&mut self, v: NodeId, k: u32) {
        self.core[v.index()] = k;
    }

    pub fn len(&self) -> usize {
        self.core.len()
    }

    pub fn is_empty(&self) -> bool {
        self.core.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.core
    }

    pub fn max_core(&self) -> u32 {
        self.core.iter().copied().max().unwrap_or(0)
    }

    /// Extends with zero entries so every id below `n` has a slot.
    pub fn grow_to(&mut self, n: usize) {
        if self.core.len() < n {
            self.core.resize(n, 0);
        }
    }

    /// Node ids whose core numbers differ, with `(self, other)` values.
    pub fn diff(&self, other: &CoreState) -> Vec<(NodeId, u32, u32)> {
        let n = self.core.len().max(other.core.len());
        (0..n)
            .filter_map(|i| {
                let a = self.core.get(i).copied().unwrap_or(0);
                let b = other.core.get(i).copied().unwrap_or(0);
                (a != b).then(|| (NodeId::from(i), a, b))
            })
            .collect()
    }
}

/// Exact core numbers in O(n + m).
///
/// Nodes sit in an array sorted by current degree with bucket start offsets;
/// taking the next node in array order always yields a minimum-degree node,
/// and decrementing a neighbor swaps it to the front of its bucket.
pub fn decompose(g: &Graph) -> CoreState {
    let n = g.capacity();
    let mut deg: Vec<u32> = (0..n).map(|i| g.degree(NodeId::from(i)) as u32).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0) as usize;

    let mut bin = vec![0u32; max_deg + 1];
    for &d in &deg {
        bin[d as usize] += 1;
    }
    let mut start = 0u32;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }

    let mut pos = vec![0u32; n];
    let mut vert = vec![NodeId(0); n];
    for (i, &d) in deg.iter().enumerate() {
        let p = bin[d as usize];
        pos[i] = p;
        vert[p as usize] = NodeId::from(i);
        bin[d as usize] += 1;
    }
    // Restore bucket starts.
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    if !bin.is_empty() {
        bin[0] = 0;
    }

    for i in 0..n {
        let v = vert[i];
        let dv = deg[v.index()];
        for &u in g.neighbors(v) {
            let du = deg[u.index()];
            if du > dv {
                let pu = pos[u.index()];
                let pw = bin[du as usize];
                let w = vert[pw as usize];
                if u != w {
                    pos[u.index()] = pw;
                    vert[pu as usize] = w;
                    pos[w.index()] = pu;
                    vert[pw as usize] = u;
                }
                bin[du as usize] += 1;
                deg[u.index()] = du - 1;
            }
        }
    }
    CoreState { core: deg }
}

/// Reference core numbers by definition: for every k, strip nodes of
/// degree below k until nothing changes; a node's core number is the last k
/// it survives. Quadratic-ish; meant for graphs of a few thousand nodes.
pub fn brute_force_core(g: &Graph) -> CoreState {
    let n = g.capacity();
    let mut core = vec![0u32; n];
    let mut k = 1u32;
    loop {
        let mut alive: Vec<bool> = (0..n).map(|i| g.degree(NodeId::from(i)) > 0).collect();
        loop {
            let mut stripped = false;
            for i in 0..n {
                if !alive[i] {
                    continue;
                }
                let d = g.neighbors(NodeId::from(i)).iter().filter(|w| alive[w.index()]).count();
                if (d as u32) < k {
                    alive[i] = false;
                    stripped = true;
                }
            }
            if !stripped {
                break;
            }
        }
        if !alive.iter().any(|&a| a) {
            break;
        }
        for i in 0..n {
            if alive[i] {
                core[i] = k;
            }
        }
        k += 1;
    }
    CoreState { core }
}

/// Number of neighbors whose core number is at least `v`'s.
pub fn compute_x(g: &Graph, cs: &CoreState, v: NodeId) -> u32 {
    let c = cs.get(v);
    g.neighbors(v).iter().filter(|&&w| cs.get(w) >= c).count() as u32
}

/// Number of neighbors whose core number is strictly above `v`'s.
pub fn compute_y(g: &Graph, cs: &CoreState, v: NodeId) -> u32 {
    let c = cs.get(v);
    g.neighbors(v).iter().filter(|&&w| cs.get(w) > c).count() as u32
}

/// First node violating `Y_v <= C_v <= X_v <= D_v`, if any.
pub fn check_xy_bounds(g: &Graph, cs: &CoreState) -> Option<NodeId> {
    g.nodes().find(|&v| {
        let (x, y, c, d) = (compute_x(g, cs, v), compute_y(g, cs, v), cs.get(v), g.degree(v) as u32);
        !(y <= c && c <= x && x <= d)
    })
}

/// Checks that for every k the nodes with core >= k induce a subgraph of
/// minimum degree >= k, and that each such set is maximal (no node of lower
/// core could join). Returns a description of the first failure.
pub fn check_nested_cores(g: &Graph, cs: &CoreState) -> Result<(), String> {
    for v in g.nodes() {
        let c = cs.get(v);
        let support = g.neighbors(v).iter().filter(|&&w| cs.get(w) >= c).count() as u32;
        if support < c {
            return Err(format!("node {v} has core {c} but only {support} neighbors in the {c}-core"));
        }
    }
    // Maximality: peeling the whole graph at threshold k must not leave
    // any node whose claimed core is below k.
    let n = g.capacity();
    let max = cs.max_core();
    let mut deg = vec![0u32; n];
    let mut inside = vec![false; n];
    let mut queue = Vec::new();
    for k in 1..=max + 1 {
        queue.clear();
        for i in 0..n {
            let v = NodeId::from(i);
            deg[i] = g.degree(v) as u32;
            inside[i] = g.is_live(v);
            if inside[i] && deg[i] < k {
                inside[i] = false;
                queue.push(v);
            }
        }
        while let Some(v) = queue.pop() {
            for &w in g.neighbors(v) {
                if inside[w.index()] {
                    deg[w.index()] -= 1;
                    if deg[w.index()] < k {
                        inside[w.index()] = false;
                        queue.push(w);
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| inside[i] && cs.get(NodeId::from(i)) < k) {
            return Err(format!("node {i} survives {k}-peeling but has core {}", cs.get(NodeId::from(i))));
        }
    }
    Ok(())
}
