//! Candidate discovery: depth-first searches over nodes whose core number
//! equals the pivot `c`, with optional X/Y pruning.
//!
//! All four searches share one explicit-stack driver that reproduces the
//! visiting order of the recursive formulation exactly: a frame remembers
//! how far through its neighbor list it got, and the `visited` test happens
//! when the scan reaches a neighbor, not when the frame is pushed.

use super::workspace::{Frame, UpdateWorkspace};
use crate::decompose::CoreState;
use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, Copy)]
enum Rule {
    Plain,
    XPrune,
    YPrune { origin: Option<NodeId> },
    XYPrune { origin: NodeId },
}

/// What to do with a node when the search first reaches it.
struct Visit {
    add_now: bool,
    expand: bool,
    add_on_exit: bool,
}

fn count_x_exceeds(g: &Graph, cs: &CoreState, u: NodeId, c: u32) -> bool {
    let mut x = 0u32;
    for &w in g.neighbors(u) {
        if cs.get(w) >= c {
            x += 1;
            if x > c {
                return true;
            }
        }
    }
    false
}

fn count_y(g: &Graph, cs: &CoreState, u: NodeId, c: u32) -> u32 {
    g.neighbors(u).iter().filter(|&&w| cs.get(w) > c).count() as u32
}

fn decide(g: &Graph, cs: &CoreState, ws: &mut UpdateWorkspace, u: NodeId, c: u32, rule: Rule) -> Visit {
    match rule {
        Rule::Plain => Visit { add_now: true, expand: true, add_on_exit: false },
        Rule::XPrune => {
            if count_x_exceeds(g, cs, u, c) {
                Visit { add_now: true, expand: true, add_on_exit: false }
            } else {
                ws.pruned += 1;
                Visit { add_now: false, expand: false, add_on_exit: false }
            }
        }
        Rule::YPrune { origin } => {
            let y = if Some(u) == origin { 0 } else { count_y(g, cs, u, c) };
            let expand = y < c || c == 0;
            if !expand {
                ws.pruned += 1;
            }
            Visit { add_now: true, expand, add_on_exit: false }
        }
        Rule::XYPrune { origin } => {
            let mut x = 0u32;
            let mut y = 0u32;
            for &w in g.neighbors(u) {
                let cw = cs.get(w);
                if cw >= c {
                    x += 1;
                }
                if u != origin && cw > c {
                    y += 1;
                }
            }
            if x > c {
                if y < c || c == 0 {
                    Visit { add_now: false, expand: true, add_on_exit: true }
                } else {
                    ws.pruned += 1;
                    Visit { add_now: true, expand: false, add_on_exit: false }
                }
            } else {
                ws.pruned += 1;
                Visit { add_now: false, expand: false, add_on_exit: false }
            }
        }
    }
}

fn enter(g: &Graph, cs: &CoreState, ws: &mut UpdateWorkspace, u: NodeId, c: u32, rule: Rule) {
    ws.mark_visited(u);
    let visit = decide(g, cs, ws, u, c, rule);
    if visit.add_now {
        ws.add_candidate(u);
    }
    if visit.expand {
        ws.stack.push(Frame { node: u, next: 0, add_on_exit: visit.add_on_exit });
    } else if visit.add_on_exit {
        ws.add_candidate(u);
    }
}

fn search(g: &Graph, cs: &CoreState, ws: &mut UpdateWorkspace, seed: NodeId, c: u32, rule: Rule) {
    debug_assert!(ws.stack.is_empty());
    enter(g, cs, ws, seed, c, rule);
    while let Some(top) = ws.stack.last_mut() {
        let u = top.node;
        let adj = g.neighbors(u);
        let mut i = top.next as usize;
        let mut next = None;
        while i < adj.len() {
            let w = adj[i];
            i += 1;
            if cs.get(w) == c && !ws.is_visited(w) {
                next = Some(w);
                break;
            }
        }
        // Re-borrow: `enter` needs the workspace mutably.
        let top = ws.stack.last_mut().expect("frame still on stack");
        top.next = i as u32;
        match next {
            Some(w) => enter(g, cs, ws, w, c, rule),
            None => {
                let done = ws.stack.pop().expect("frame still on stack");
                if done.add_on_exit {
                    ws.add_candidate(done.node);
                }
            }
        }
    }
}

/// Collects every node reachable from `seed` through nodes of core `c`,
/// coloring each with 1.
pub fn color(g: &Graph, cs: &CoreState, ws: &mut UpdateWorkspace, seed: NodeId, c: u32) {
    search(g, cs, ws, seed, c, Rule::Plain);
}

/// Like [`color`], but a node with at most `c` neighbors of core `>= c`
/// cannot rise above `c`: it is neither colored nor expanded.
pub fn x_prune_color(g: &Graph, cs: &CoreState, ws: &mut UpdateWorkspace, seed: NodeId, c: u32) {
    search(g, cs, ws, seed, c, Rule::XPrune);
}

/// Like [`color`], but a node with `c` neighbors of core `> c` is colored
/// without expanding its neighbors.
///
/// `origin`, when given, is treated as having no such neighbors. Insertions
/// pass the seed here: right after inserting an edge towards a higher-core
/// node the seed's count includes that fresh edge, and stopping there would
/// lose nodes that rise together with the seed.
pub fn y_prune_color(
    g: &Graph,
    cs: &CoreState,
    ws: &mut UpdateWorkspace,
    seed: NodeId,
    origin: Option<NodeId>,
    c: u32,
) {
    search(g, cs, ws, seed, c, Rule::YPrune { origin });
}

/// Combined pruning: a node is colored only if it has more than `c`
/// neighbors of core `>= c`, and expanded only if additionally it has fewer
/// than `c` neighbors of core `> c` (always, when `c == 0`). The origin's
/// higher-core neighbors are not counted. Nodes are appended when their
/// subtree finishes.
pub fn xy_prune_color(g: &Graph, cs: &CoreState, ws: &mut UpdateWorkspace, seed: NodeId, origin: NodeId, c: u32) {
    search(g, cs, ws, seed, c, Rule::XYPrune { origin });
}
