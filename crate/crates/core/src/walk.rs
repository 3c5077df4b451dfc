//! Directed walks on signed graphs.
//!
//! A walk is a start vertex plus a sequence of edge traversals. Each step
//! records which end it leaves from and the direction values at both of its
//! slots. Along a direction, values at the two ends of a step multiply to
//! `-sign(edge)` and values on either side of an intermediate vertex cancel.

use std::collections::BTreeMap;

use crate::cycletree::{self, CircuitClass};
use crate::error::WalkError;
use crate::flow::IntFlow;
use crate::graph::{EdgeId, Sign, SignedGraph, Slot, VertexId};
use crate::orientation::Orientation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WalkStep {
    pub edge: EdgeId,
    pub from_end: u8,
    pub dir_from: i8,
    pub dir_to: i8,
}

impl WalkStep {
    pub fn from_slot(&self) -> Slot {
        Slot::new(self.edge, self.from_end)
    }

    pub fn to_slot(&self) -> Slot {
        Slot::new(self.edge, 1 - self.from_end)
    }

    /// The same traversal run backwards.
    pub fn reversed(&self) -> WalkStep {
        WalkStep { edge: self.edge, from_end: 1 - self.from_end, dir_from: self.dir_to, dir_to: self.dir_from }
    }

    /// Direction values indexed by end: `[value at end 0, value at end 1]`.
    pub fn slot_values(&self) -> [i8; 2] {
        let mut v = [0; 2];
        v[self.from_end as usize] = self.dir_from;
        v[1 - self.from_end as usize] = self.dir_to;
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectedWalk {
    pub start: VertexId,
    pub steps: Vec<WalkStep>,
}

impl DirectedWalk {
    /// Walk along `(edge, from_end)` traversals with the direction determined
    /// by its value at the very first slot.
    pub fn from_traversals(g: &SignedGraph, traversals: &[(EdgeId, u8)], first_value: i8) -> DirectedWalk {
        assert!(!traversals.is_empty(), "walk needs at least one step");
        let start = g.slot_vertex(Slot::new(traversals[0].0, traversals[0].1));
        let mut steps = Vec::with_capacity(traversals.len());
        let mut next_from = first_value;
        for &(edge, from_end) in traversals {
            let dir_to = -g.sign(edge).value() * next_from;
            steps.push(WalkStep { edge, from_end, dir_from: next_from, dir_to });
            next_from = -dir_to;
        }
        DirectedWalk { start, steps }
    }

    /// Walk whose direction values are read off an orientation.
    pub fn along_orientation(g: &SignedGraph, traversals: &[(EdgeId, u8)], eps: &Orientation) -> DirectedWalk {
        assert!(!traversals.is_empty(), "walk needs at least one step");
        let start = g.slot_vertex(Slot::new(traversals[0].0, traversals[0].1));
        let steps = traversals
            .iter()
            .map(|&(edge, from_end)| {
                let from = Slot::new(edge, from_end);
                WalkStep { edge, from_end, dir_from: eps.at(from), dir_to: eps.at(from.other()) }
            })
            .collect();
        DirectedWalk { start, steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Vertex sequence `u_0 .. u_n`.
    pub fn vertices(&self, g: &SignedGraph) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(self.start);
        out.extend(self.steps.iter().map(|s| g.slot_vertex(s.to_slot())));
        out
    }

    pub fn validate(&self, g: &SignedGraph) -> Result<(), WalkError> {
        if self.steps.is_empty() {
            return Err(WalkError::Empty);
        }
        let mut at = self.start;
        for (i, step) in self.steps.iter().enumerate() {
            if step.from_end > 1 || step.edge.0 >= g.num_edges() {
                return Err(WalkError::BadEnd { step: i });
            }
            if g.slot_vertex(step.from_slot()) != at {
                return Err(WalkError::VertexMismatch { step: i, prev: i.saturating_sub(1) });
            }
            if step.dir_from * step.dir_to != -g.sign(step.edge).value() {
                return Err(WalkError::DirectionProduct { step: i });
            }
            if i > 0 && self.steps[i - 1].dir_to + step.dir_from != 0 {
                return Err(WalkError::NoAlternation { step: i, prev: i - 1 });
            }
            at = g.slot_vertex(step.to_slot());
        }
        Ok(())
    }

    /// Directed closed: ends where it starts and the values at the closing
    /// vertex cancel.
    pub fn is_closed(&self, g: &SignedGraph) -> bool {
        let (Some(first), Some(last)) = (self.steps.first(), self.steps.last()) else {
            return false;
        };
        g.slot_vertex(last.to_slot()) == self.start && first.dir_from + last.dir_to == 0
    }

    pub fn sign(&self, g: &SignedGraph) -> Sign {
        crate::graph::sign_of_edge_set(g, self.steps.iter().map(|s| s.edge))
    }

    /// At every revisit `u_a = u_b` (`a < b < n`) the walk arrives with the
    /// value it originally departed with.
    pub fn is_midway_back_avoided(&self, g: &SignedGraph) -> bool {
        let us = self.vertices(g);
        let n = self.steps.len();
        (1..n).all(|b| (0..b).all(|a| us[a] != us[b] || self.steps[b - 1].dir_to == self.steps[a].dir_from))
    }

    /// Occurrence count of each vertex among `u_0 .. u_{n-1}`.
    pub fn vertex_multiplicity(&self, g: &SignedGraph) -> BTreeMap<VertexId, usize> {
        let us = self.vertices(g);
        let mut counts = BTreeMap::new();
        for &u in &us[..self.steps.len()] {
            *counts.entry(u).or_insert(0) += 1;
        }
        counts
    }

    pub fn has_triple_vertex(&self, g: &SignedGraph) -> bool {
        self.vertex_multiplicity(g).values().any(|&c| c >= 3)
    }

    /// Vertices occurring exactly twice among `u_0 .. u_{n-1}`.
    pub fn double_vertices(&self, g: &SignedGraph) -> Vec<VertexId> {
        self.vertex_multiplicity(g).into_iter().filter(|&(_, c)| c == 2).map(|(v, _)| v).collect()
    }

    /// Traversal count per edge, indexed by edge.
    pub fn edge_multiplicity(&self, num_edges: usize) -> Vec<usize> {
        let mut counts = vec![0; num_edges];
        for s in &self.steps {
            counts[s.edge.0] += 1;
        }
        counts
    }

    /// Distinct edges, sorted.
    pub fn support(&self) -> Vec<EdgeId> {
        let mut edges: Vec<EdgeId> = self.steps.iter().map(|s| s.edge).collect();
        edges.sort();
        edges.dedup();
        edges
    }

    /// Balanced directed closed walk whose repeated traversals of an edge all
    /// carry the same slot values.
    pub fn is_eulerian(&self, g: &SignedGraph) -> bool {
        if !self.is_closed(g) || self.sign(g) != Sign::Positive {
            return false;
        }
        let mut seen: BTreeMap<EdgeId, [i8; 2]> = BTreeMap::new();
        self.steps.iter().all(|s| *seen.entry(s.edge).or_insert(s.slot_values()) == s.slot_values())
    }

    /// The walk's direction as an orientation on its support. Only meaningful
    /// for walks whose repeated traversals agree.
    pub fn direction(&self, num_edges: usize) -> Orientation {
        let mut eps = Orientation::empty(num_edges);
        for s in &self.steps {
            eps.set_edge(s.edge, s.slot_values());
        }
        eps
    }

    /// Sum over traversals of the agreement between `eps` and the walk's
    /// direction on that traversal.
    pub fn characteristic_vector(&self, g: &SignedGraph, eps: &Orientation) -> Result<IntFlow, WalkError> {
        self.validate(g)?;
        if !self.is_closed(g) {
            return Err(WalkError::NotClosed);
        }
        let mut f = IntFlow::zero(g.num_edges());
        for s in &self.steps {
            f.add_to(s.edge, (eps.at(s.from_slot()) * s.dir_from) as i64);
        }
        Ok(f)
    }

    pub fn reversed(&self, g: &SignedGraph) -> DirectedWalk {
        let start = match self.steps.last() {
            Some(last) => g.slot_vertex(last.to_slot()),
            None => self.start,
        };
        DirectedWalk { start, steps: self.steps.iter().rev().map(WalkStep::reversed).collect() }
    }

    /// Cyclic rotation of a closed walk so that it starts at step `k`.
    pub fn rotated(&self, g: &SignedGraph, k: usize) -> DirectedWalk {
        let n = self.steps.len();
        let steps: Vec<WalkStep> = (0..n).map(|i| self.steps[(k + i) % n]).collect();
        let start = g.slot_vertex(steps[0].from_slot());
        DirectedWalk { start, steps }
    }

    /// Minimal Eulerian walk, decided structurally: the support is an
    /// Eulerian cycle-tree, block-cycle edges are used once and block-path
    /// edges twice.
    pub fn is_minimal_eulerian(&self, g: &SignedGraph) -> bool {
        if !self.is_eulerian(g) {
            return false;
        }
        let Ok(tree) = cycletree::detect_cycle_tree(g, &self.support()) else {
            return false;
        };
        if !tree.check_parity().holds {
            return false;
        }
        let indicator = tree.indicator_values(g.num_edges());
        self.edge_multiplicity(g.num_edges()).iter().zip(&indicator).all(|(&m, &i)| m as i64 == i)
    }

    /// Minimal Eulerian walk whose support is a circuit.
    pub fn is_elementary(&self, g: &SignedGraph) -> bool {
        if !self.is_minimal_eulerian(g) {
            return false;
        }
        let tree = cycletree::detect_cycle_tree(g, &self.support()).expect("checked above");
        tree.classify(g) != CircuitClass::NotCircuit
    }
}
