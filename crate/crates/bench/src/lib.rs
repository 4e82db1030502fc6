//! Shared setup for the criterion benches.

use coremaint::generate::generate_power_law;
use coremaint::harness::{generate_stream, TrialConfig};
use coremaint::{Graph, NodeId};

pub const SIZES: [usize; 2] = [10_000, 100_000];
pub const ATTACHMENTS: usize = 5;

/// A generated graph plus a fixed sample of its edges. Deleting and then
/// re-inserting a sampled edge leaves graph and cores unchanged, so a
/// bench loop can cycle through the sample indefinitely.
pub struct Fixture {
    pub graph: Graph,
    pub edges: Vec<(NodeId, NodeId)>,
}

impl Fixture {
    pub fn new(nodes: usize, sample: usize, seed: u64) -> Self {
        let graph = generate_power_law(nodes, ATTACHMENTS, seed).expect("valid generator parameters");
        let cfg =
            TrialConfig { num_deletions: sample, num_insertions: 0, algorithms: Vec::new(), rng_seed: seed, warmup: 0 };
        let stream = generate_stream(&graph, &cfg).expect("graph has enough edges");
        let edges = stream.updates.iter().map(|s| (s.u, s.v)).collect();
        Fixture { graph, edges }
    }
}
