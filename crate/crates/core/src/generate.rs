//! Synthetic graph generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("need 1 <= attachments < 1000 and nodes > attachments + 1, got nodes={nodes}, attachments={attachments}")]
    InvalidParameters { nodes: usize, attachments: usize },
    #[error("edge probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),
}

/// Largest attachment count drawn by [`generate_power_law`].
pub const MAX_ATTACHMENTS: usize = 1000;

/// Classic fixed-`m` preferential attachment: starts from a clique on
/// `attachments + 1` nodes, then every new node links to `attachments`
/// distinct existing nodes chosen with probability proportional to their
/// degree. Every node ends up with core number exactly `attachments`.
pub fn generate_barabasi_albert(nodes: usize, attachments: usize, seed: u64) -> Result<Graph, GenerateError> {
    check(nodes, attachments)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(attach(nodes, attachments, &mut rng, |_| attachments))
}

/// Preferential attachment with a heavy-tailed number of links per node.
///
/// Like [`generate_barabasi_albert`], but node `t` links to `k_t` nodes
/// where `P(k_t >= j) = j^-a` for `1 <= j <= MAX_ATTACHMENTS`, with `a`
/// chosen so that the mean of `k_t` is `attachments`. The graph has about
/// `nodes * attachments` edges, a power-law degree tail, and a broad range
/// of core numbers.
pub fn generate_power_law(nodes: usize, attachments: usize, seed: u64) -> Result<Graph, GenerateError> {
    check(nodes, attachments)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alpha = tail_exponent(attachments as f64);
    Ok(attach(nodes, attachments, &mut rng, |rng| {
        if attachments == 1 {
            return 1;
        }
        let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        (u.powf(-1.0 / alpha) as usize).clamp(1, MAX_ATTACHMENTS)
    }))
}

fn check(nodes: usize, attachments: usize) -> Result<(), GenerateError> {
    if attachments == 0 || attachments >= MAX_ATTACHMENTS || nodes <= attachments + 1 {
        return Err(GenerateError::InvalidParameters { nodes, attachments });
    }
    Ok(())
}

/// Mean of `min(floor(U^(-1/a)), MAX_ATTACHMENTS)` is the sum of `j^-a`
/// over `1..=MAX_ATTACHMENTS`; bisect on `a` until it equals `mean`.
fn tail_exponent(mean: f64) -> f64 {
    let capped_mean = |a: f64| (1..=MAX_ATTACHMENTS).map(|j| (j as f64).powf(-a)).sum::<f64>();
    let (mut lo, mut hi) = (0.0f64, 64.0f64);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if capped_mean(mid) > mean {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn attach(
    nodes: usize,
    attachments: usize,
    rng: &mut ChaCha8Rng,
    mut links: impl FnMut(&mut ChaCha8Rng) -> usize,
) -> Graph {
    let m0 = attachments + 1;
    let mut g = Graph::with_nodes(nodes);
    // Each edge contributes both endpoints, so a uniform pick from this list
    // is a degree-proportional pick of a node.
    let mut endpoints: Vec<NodeId> = Vec::with_capacity(2 * nodes * attachments);
    for a in 0..m0 {
        for b in a + 1..m0 {
            let (u, v) = (NodeId::from(a), NodeId::from(b));
            g.insert_edge(u, v).expect("clique edges are distinct");
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    let mut targets: Vec<NodeId> = Vec::new();
    for t in m0..nodes {
        let new = NodeId::from(t);
        let k = links(rng).min(t);
        targets.clear();
        while targets.len() < k {
            let w = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&w) {
                targets.push(w);
            }
        }
        for &w in &targets {
            g.insert_edge(new, w).expect("targets are distinct existing nodes");
            endpoints.push(new);
            endpoints.push(w);
        }
    }
    g
}

/// G(n, p) random graph.
pub fn generate_gnp(nodes: usize, p: f64, seed: u64) -> Result<Graph, GenerateError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenerateError::InvalidProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::with_nodes(nodes);
    for a in 0..nodes {
        for b in a + 1..nodes {
            if rng.gen_bool(p) {
                g.insert_edge(NodeId::from(a), NodeId::from(b)).expect("fresh pair");
            }
        }
    }
    Ok(g)
}

/// Uniformly random relabeling of `0..n`.
pub fn random_permutation(n: usize, seed: u64) -> Vec<NodeId> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p: Vec<NodeId> = (0..n).map(NodeId::from).collect();
    p.shuffle(&mut rng);
    p
}
