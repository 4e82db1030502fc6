//! Core-number maintenance for dynamic graphs.
//!
//! * [`graph`]: mutable undirected simple graph with dense node ids.
//! * [`decompose`]: linear-time static decomposition plus a brute-force reference.
//! * [`maintain`]: incremental maintenance after single edge insertions and
//!   deletions, with X/Y-pruned candidate searches.
//! * [`harness`]: replayable random update streams, timing and speedup reports.
//! * [`generate`]: preferential-attachment and G(n, p) generators.
//! * [`io`]: edge-list, core-dump and update-script text formats.

pub mod decompose;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod io;
pub mod maintain;

pub use decompose::{brute_force_core, compute_x, compute_y, decompose, CoreState};
pub use graph::{Graph, GraphError, NodeId};
pub use maintain::{
    delete_and_maintain, insert_and_maintain, Algorithm, CoreChange, DynamicCore, UpdateKind, UpdateReport,
    UpdateWorkspace, Variant,
};
