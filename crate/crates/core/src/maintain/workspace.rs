use crate::graph::NodeId;

/// Reusable scratch state for one maintenance call.
///
/// `visited` and `color` are epoch stamps: a node is visited iff its stamp
/// equals the current visit epoch, and colored 1 iff its color stamp equals
/// the current color epoch. Starting an update is therefore O(1) instead of
/// a sweep over every node. The visit epoch can also be bumped on its own,
/// which clears visited flags mid-update while keeping colors.
#[derive(Debug, Clone)]
pub struct UpdateWorkspace {
    visited: Vec<u32>,
    color: Vec<u32>,
    visit_epoch: u32,
    color_epoch: u32,
    pub(crate) candidates: Vec<NodeId>,
    pub(crate) stack: Vec<Frame>,
    pub(crate) pruned: usize,
    pub(crate) rounds: usize,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Frame {
    pub node: NodeId,
    pub next: u32,
    pub add_on_exit: bool,
}

impl Default for UpdateWorkspace {
    fn default() -> Self {
        Self::new(0)
    }
}

impl UpdateWorkspace {
    pub fn new(n: usize) -> Self {
        UpdateWorkspace {
            visited: vec![0; n],
            color: vec![0; n],
            visit_epoch: 0,
            color_epoch: 0,
            candidates: Vec::new(),
            stack: Vec::new(),
            pruned: 0,
            rounds: 0,
        }
    }

    /// Starts a new update over an id space of size `n`: every node becomes
    /// unvisited and colored 0, the candidate list is emptied.
    pub fn begin(&mut self, n: usize) {
        if self.visited.len() < n {
            self.visited.resize(n, 0);
            self.color.resize(n, 0);
        }
        self.candidates.clear();
        self.stack.clear();
        self.pruned = 0;
        self.rounds = 0;
        self.reset_visited();
        if self.color_epoch == u32::MAX {
            self.color.fill(0);
            self.color_epoch = 0;
        }
        self.color_epoch += 1;
    }

    /// Marks every node unvisited without touching colors.
    pub fn reset_visited(&mut self) {
        if self.visit_epoch == u32::MAX {
            self.visited.fill(0);
            self.visit_epoch = 0;
        }
        self.visit_epoch += 1;
    }

    #[inline]
    pub fn is_visited(&self, v: NodeId) -> bool {
        self.visited[v.index()] == self.visit_epoch
    }

    #[inline]
    pub(crate) fn mark_visited(&mut self, v: NodeId) {
        self.visited[v.index()] = self.visit_epoch;
    }

    #[inline]
    pub fn is_colored(&self, v: NodeId) -> bool {
        self.color[v.index()] == self.color_epoch
    }

    /// Colors `v` with 1 and appends it to the candidates, unless it already
    /// carries color 1.
    #[inline]
    pub(crate) fn add_candidate(&mut self, v: NodeId) {
        if !self.is_colored(v) {
            self.color[v.index()] = self.color_epoch;
            self.candidates.push(v);
        }
    }

    #[inline]
    pub(crate) fn uncolor(&mut self, v: NodeId) {
        self.color[v.index()] = 0;
    }

    /// Candidate set in discovery order.
    pub fn candidates(&self) -> &[NodeId] {
        &self.candidates
    }

    /// Candidate list for reordering between the search and the recolor
    /// step. The recolor fixpoint does not depend on the order; replacing
    /// entries breaks the workspace invariants.
    #[doc(hidden)]
    pub fn candidates_mut(&mut self) -> &mut [NodeId] {
        &mut self.candidates
    }

    /// Candidates currently colored 1.
    pub fn colored_candidates(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.candidates.iter().copied().filter(|&v| self.is_colored(v))
    }

    pub fn pruned(&self) -> usize {
        self.pruned
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn begin_clears_flags_in_constant_time() {
        let mut ws = UpdateWorkspace::new(3);
        ws.begin(3);
        ws.mark_visited(NodeId(1));
        ws.add_candidate(NodeId(1));
        ws.add_candidate(NodeId(1));
        assert_eq!(ws.candidates(), &[NodeId(1)]);
        ws.begin(4);
        assert!(!ws.is_visited(NodeId(1)));
        assert!(!ws.is_colored(NodeId(1)));
        assert!(ws.candidates().is_empty());
        assert!(!ws.is_colored(NodeId(3)));
    }

    #[test]
    fn reset_visited_keeps_colors() {
        let mut ws = UpdateWorkspace::new(2);
        ws.begin(2);
        ws.mark_visited(NodeId(0));
        ws.add_candidate(NodeId(0));
        ws.reset_visited();
        assert!(!ws.is_visited(NodeId(0)));
        assert!(ws.is_colored(NodeId(0)));
    }

    #[test]
    fn epoch_wraparound_clears_stamps() {
        let mut ws = UpdateWorkspace::new(2);
        ws.visit_epoch = u32::MAX - 1;
        ws.color_epoch = u32::MAX - 1;
        ws.begin(2);
        ws.mark_visited(NodeId(0));
        ws.add_candidate(NodeId(0));
        ws.begin(2);
        assert!(!ws.is_visited(NodeId(0)));
        assert!(!ws.is_colored(NodeId(0)));
        ws.mark_visited(NodeId(1));
        assert!(ws.is_visited(NodeId(1)));
    }
}
