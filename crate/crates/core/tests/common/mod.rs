#![allow(dead_code)]

use std::path::PathBuf;

use coremaint::io::{load_edge_list, LoadedGraph};
use coremaint::{Graph, NodeId};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// The 18-node example graph; labels are the node numbers `1..=18`.
pub fn example18() -> LoadedGraph {
    let f = std::fs::File::open(fixture("example18.txt")).expect("fixture present");
    load_edge_list(std::io::BufReader::new(f)).expect("fixture parses")
}

pub struct Labeled {
    pub loaded: LoadedGraph,
}

impl Labeled {
    pub fn new(loaded: LoadedGraph) -> Self {
        Labeled { loaded }
    }

    pub fn id(&self, label: u64) -> NodeId {
        self.loaded.labels.id(label).expect("known label")
    }

    pub fn ids(&self, labels: &[u64]) -> Vec<NodeId> {
        labels.iter().map(|&l| self.id(l)).collect()
    }

    pub fn sorted_ids(&self, labels: &[u64]) -> Vec<NodeId> {
        let mut v = self.ids(labels);
        v.sort_unstable();
        v
    }

    pub fn labels_of(&self, ids: &[NodeId]) -> Vec<u64> {
        ids.iter().map(|&v| self.loaded.labels.label(v)).collect()
    }

    pub fn graph(&self) -> &Graph {
        &self.loaded.graph
    }
}

pub fn complete(k: u32) -> Graph {
    let mut edges = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            edges.push((NodeId(a), NodeId(b)));
        }
    }
    Graph::from_edges(k as usize, edges)
}
