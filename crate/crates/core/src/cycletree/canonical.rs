//! Block-crossing closed walks: block-cycle edges once, block-path edges
//! twice, switching blocks at every cut-point.

use crate::graph::{EdgeId, SignedGraph, VertexId};
use crate::orientation::Orientation;
use crate::walk::DirectedWalk;

use super::{CycleTree, EulerianCycleTree};

impl CycleTree {
    /// Root of the canonical walk: the end-block cycle with the smallest
    /// edge, or the only cycle.
    pub(crate) fn root_cycle(&self) -> usize {
        if self.block_cycles.len() == 1 {
            return 0;
        }
        self.end_block_cycles()
            .into_iter()
            .min_by_key(|&c| self.block_cycles[c].min_edge())
            .expect("a cycle-tree with several cycles has end-block cycles")
    }

    fn excursion(&self, g: &SignedGraph, att_index: usize, from_cycle: usize, out: &mut Vec<(EdgeId, u8)>) {
        let att = &self.attachments[att_index];
        let side = att.side(from_cycle);
        let (v, w) = (att.vertices[side], att.vertices[1 - side]);
        let path = att.path.map(|p| self.block_paths[p].traversal_from(v)).unwrap_or_default();
        out.extend_from_slice(&path);
        self.walk_cycle(g, att.cycles[1 - side], w, Some(att_index), out);
        out.extend(path.iter().rev().map(|&(e, fe)| (e, 1 - fe)));
    }

    fn attachment_at(&self, c: usize, v: VertexId, skip: Option<usize>) -> Option<usize> {
        self.attachments_of(c)
            .find(|(i, a)| Some(*i) != skip && a.vertices[a.side(c)] == v)
            .map(|(i, _)| i)
    }

    fn walk_cycle(
        &self,
        g: &SignedGraph,
        c: usize,
        start: VertexId,
        parent: Option<usize>,
        out: &mut Vec<(EdgeId, u8)>,
    ) {
        let traversal = self.block_cycles[c].traversal_from(start);
        let n = traversal.len();
        for (k, &step) in traversal.iter().enumerate() {
            out.push(step);
            if k + 1 < n {
                let at = g.edge(step.0).ends[1 - step.1 as usize];
                if let Some(a) = self.attachment_at(c, at, parent) {
                    self.excursion(g, a, c, out);
                }
            }
        }
        if parent.is_none() {
            if let Some(a) = self.attachment_at(c, start, None) {
                self.excursion(g, a, c, out);
            }
        }
    }

    /// Edge traversals of the canonical block-crossing closed walk.
    pub fn canonical_traversal(&self, g: &SignedGraph) -> Vec<(EdgeId, u8)> {
        let root = self.root_cycle();
        let start = if self.block_cycles.len() == 1 {
            self.block_cycles[root].vertices[0]
        } else {
            let (_, a) = self.attachments_of(root).next().expect("root has an attachment");
            a.vertices[a.side(root)]
        };
        let mut out = Vec::with_capacity(self.edges.len() + 2 * self.block_paths.len());
        self.walk_cycle(g, root, start, None, &mut out);
        out
    }
}

impl EulerianCycleTree {
    /// Closed walk through the tree along its direction `eps_t`. It starts
    /// with the root end-block cycle, handles the attachment at each vertex
    /// it meets, and returns through each block path after covering the
    /// subtree behind it.
    pub fn canonical_closed_walk(&self, g: &SignedGraph, eps_t: &Orientation) -> DirectedWalk {
        DirectedWalk::along_orientation(g, &self.canonical_traversal(g), eps_t)
    }
}
