//! Recoloring fixpoints and the final core-number writes.

use super::workspace::UpdateWorkspace;
use super::CoreChange;
use crate::decompose::CoreState;
use crate::graph::{Graph, NodeId};

/// True if `u` has at least `need` neighbors that are colored 1 or have a
/// core number above `c`. Candidates that were recolored 0 do not count,
/// even though their stored core is still `c`.
#[inline]
fn has_support(g: &Graph, cs: &CoreState, ws: &UpdateWorkspace, u: NodeId, c: u32, need: u32) -> bool {
    if need == 0 {
        return true;
    }
    let mut x = 0u32;
    for &w in g.neighbors(u) {
        if ws.is_colored(w) || cs.get(w) > c {
            x += 1;
            if x >= need {
                return true;
            }
        }
    }
    false
}

/// Whole-set passes over the candidates in discovery order; each pass
/// recolors every color-1 node with fewer than `need` supporters, and
/// passes repeat until one changes nothing.
fn recolor(g: &Graph, cs: &CoreState, ws: &mut UpdateWorkspace, c: u32, need: u32) {
    loop {
        ws.rounds += 1;
        let mut flag = false;
        for i in 0..ws.candidates.len() {
            let u = ws.candidates[i];
            if ws.is_colored(u) && !has_support(g, cs, ws, u, c, need) {
                ws.uncolor(u);
                flag = true;
            }
        }
        if !flag {
            break;
        }
    }
}

/// After an insertion: drops color from candidates with at most `c`
/// supporters. Survivors are exactly the nodes whose core rises to `c + 1`.
pub fn recolor_insert(g: &Graph, cs: &CoreState, ws: &mut UpdateWorkspace, c: u32) {
    recolor(g, cs, ws, c, c + 1);
}

/// After a deletion: drops color from candidates with fewer than `c`
/// supporters. The recolored nodes are exactly those whose core falls to
/// `c - 1`.
pub fn recolor_delete(g: &Graph, cs: &CoreState, ws: &mut UpdateWorkspace, c: u32) {
    recolor(g, cs, ws, c, c);
}

pub fn update_insert(cs: &mut CoreState, ws: &UpdateWorkspace, c: u32) -> Vec<CoreChange> {
    let mut changed = Vec::new();
    for v in ws.colored_candidates() {
        cs.set(v, c + 1);
        changed.push(CoreChange { node: v, old: c, new: c + 1 });
    }
    changed
}

pub fn update_delete(cs: &mut CoreState, ws: &UpdateWorkspace, c: u32) -> Vec<CoreChange> {
    debug_assert!(c > 0 || ws.candidates().is_empty());
    let mut changed = Vec::new();
    for &v in ws.candidates() {
        if !ws.is_colored(v) {
            cs.set(v, c - 1);
            changed.push(CoreChange { node: v, old: c, new: c - 1 });
        }
    }
    changed
}

#[cfg(test)]
mod tests {
    use super::super::coloring::color;
    use super::*;
    use crate::decompose::decompose;

    fn n(i: u32) -> NodeId {
        NodeId(i)
    }

    #[test]
    fn lone_candidate_without_support_is_recolored() {
        // Single edge, c = 1: node 0 alone has one supporter, needs two.
        let g = Graph::from_edges(2, [(n(0), n(1))]);
        let cs = decompose(&g);
        let mut ws = UpdateWorkspace::new(2);
        ws.begin(2);
        ws.mark_visited(n(0));
        ws.add_candidate(n(0));
        recolor_insert(&g, &cs, &mut ws, 1);
        assert_eq!(ws.colored_candidates().count(), 0);
        assert!(update_insert(&mut cs.clone(), &ws, 1).is_empty());
        assert_eq!(ws.rounds(), 2);
    }

    #[test]
    fn candidate_with_higher_core_support_survives_delete() {
        // Node 0 (core 2) with two neighbors in a K4 (core 3).
        let mut edges = vec![(n(0), n(1)), (n(0), n(2))];
        for a in 1..5 {
            for b in a + 1..5 {
                edges.push((n(a), n(b)));
            }
        }
        let g = Graph::from_edges(5, edges);
        let cs = decompose(&g);
        assert_eq!(cs.get(n(0)), 2);
        let mut ws = UpdateWorkspace::new(5);
        ws.begin(5);
        color(&g, &cs, &mut ws, n(0), 2);
        recolor_delete(&g, &cs, &mut ws, 2);
        assert!(ws.is_colored(n(0)));
        assert!(update_delete(&mut cs.clone(), &ws, 2).is_empty());
    }

    #[test]
    fn delete_lower_boundary_reaches_zero() {
        let mut g = Graph::from_edges(2, [(n(0), n(1))]);
        let mut cs = decompose(&g);
        g.delete_edge(n(0), n(1)).unwrap();
        let mut ws = UpdateWorkspace::new(2);
        ws.begin(2);
        color(&g, &cs, &mut ws, n(0), 1);
        ws.reset_visited();
        color(&g, &cs, &mut ws, n(1), 1);
        recolor_delete(&g, &cs, &mut ws, 1);
        let changed = update_delete(&mut cs, &ws, 1);
        assert_eq!(changed.len(), 2);
        assert_eq!(cs.as_slice(), &[0, 0]);
    }
}
