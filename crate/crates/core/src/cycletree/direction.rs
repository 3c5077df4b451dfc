//! Construction of the direction of an Eulerian cycle-tree.
//!
//! Peels an end-block cycle `C0` together with the block path `P` (possibly
//! of length zero) that joins it to a neighbouring cycle `C1` at `w0`.
//! Switching the sign of one edge `z1` of `C1` at `w0` keeps the remainder
//! Eulerian, so it can be directed recursively. Negating the remainder's
//! value at `(w0, z1)` then creates a sink or source of `C1` at `w0`, and `P`
//! and `C0` are directed outward from there.

use crate::error::DirectionError;
use crate::graph::{EdgeId, Sign, SignedGraph, Slot};
use crate::orientation::Orientation;

use super::{CycleTree, EulerianCycleTree};

struct Peeler<'a> {
    tree: &'a CycleTree,
    signs: Vec<Sign>,
    alive: Vec<bool>,
    g: &'a SignedGraph,
}

impl Peeler<'_> {
    fn alive_attachments(&self, c: usize) -> Vec<usize> {
        self.tree
            .attachments_of(c)
            .filter(|(_, a)| self.alive[a.cycles[0]] && self.alive[a.cycles[1]])
            .map(|(i, _)| i)
            .collect()
    }

    /// Assigns values along a traversal starting with `first` at the first
    /// slot; returns the value at the last slot.
    fn propagate(&self, eps: &mut Orientation, traversal: &[(EdgeId, u8)], first: i8) -> i8 {
        let mut next = first;
        let mut last = first;
        for &(e, fe) in traversal {
            let to = -self.signs[e.0].value() * next;
            let mut vals = [0i8; 2];
            vals[fe as usize] = next;
            vals[1 - fe as usize] = to;
            eps.set_edge(e, vals);
            last = to;
            next = -to;
        }
        last
    }

    fn direct(&mut self, eps: &mut Orientation) {
        let alive: Vec<usize> = (0..self.alive.len()).filter(|&c| self.alive[c]).collect();
        if alive.len() == 1 {
            let c = &self.tree.block_cycles[alive[0]];
            let last = self.propagate(eps, &c.traversal, 1);
            assert_eq!(last, -1, "lone block cycle must be balanced under the current signs");
            return;
        }
        let leaf = alive
            .iter()
            .copied()
            .filter(|&c| self.alive_attachments(c).len() == 1)
            .min_by_key(|&c| self.tree.block_cycles[c].min_edge())
            .expect("a tree with two or more cycles has a leaf");
        let att = &self.tree.attachments[self.alive_attachments(leaf)[0]];
        let side = att.side(leaf);
        let (u0, w0) = (att.vertices[side], att.vertices[1 - side]);
        let c1 = &self.tree.block_cycles[att.cycles[1 - side]];
        let z1 = self
            .g
            .slots_at(w0)
            .iter()
            .filter(|s| c1.contains_edge(s.edge))
            .map(|s| s.edge)
            .min()
            .expect("cycle passes through its attachment vertex");
        let z1_slot = Slot::new(z1, if self.g.edge(z1).ends[0] == w0 { 0 } else { 1 });

        self.signs[z1.0] = self.signs[z1.0].flipped();
        self.alive[leaf] = false;
        self.direct(eps);
        self.alive[leaf] = true;
        self.signs[z1.0] = self.signs[z1.0].flipped();

        let flipped = -eps.at(z1_slot);
        eps.set_slot(z1_slot, flipped);

        // value on the far side of u0 from C0
        let outer = match att.path {
            Some(p) => {
                let path = &self.tree.block_paths[p];
                self.propagate(eps, &path.traversal_from(w0), -flipped)
            }
            None => flipped,
        };
        let c0 = &self.tree.block_cycles[leaf];
        let last = self.propagate(eps, &c0.traversal_from(u0), -outer);
        assert_eq!(last, -outer, "end-block cycle must be unbalanced under the current signs");
    }
}

impl EulerianCycleTree {
    /// The direction of the tree, normalized to `+1` on end 0 of its
    /// smallest edge. The only other direction is its negation.
    pub fn find_direction(&self, g: &SignedGraph) -> Orientation {
        let mut peeler = Peeler {
            tree: self.tree(),
            signs: g.edges().iter().map(|e| e.sign).collect(),
            alive: vec![true; self.block_cycles.len()],
            g,
        };
        let mut eps = Orientation::empty(g.num_edges());
        peeler.direct(&mut eps);
        let first = self.edges[0];
        if eps.at(Slot::new(first, 0)) < 0 {
            eps = eps.negated();
        }
        debug_assert!(self.is_direction(g, &eps), "constructed orientation is not a direction");
        eps
    }
}

impl CycleTree {
    /// Direction of the tree if the parity condition holds.
    pub fn find_direction(&self, g: &SignedGraph) -> Result<Orientation, DirectionError> {
        let eulerian = self.clone().into_eulerian()?;
        Ok(eulerian.find_direction(g))
    }
}
