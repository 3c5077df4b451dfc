//! Half-integer scale decomposition of non-circuit Eulerian cycle-trees.
//!
//! A block-crossing closed walk `W` of the tree is cut into
//! `C_0 P_1 C_1 ... P_k C_k P_{k+1}` where the `C_i` are the end-block cycles
//! and the `P_i` are the open paths between them. Each consecutive triple
//! `C_i P_{i+1} C_{i+1}` (indices mod `k + 1`) is a type III circuit, and
//! half the sum of their indicators is the indicator of the tree.
//!
//! The division is built by induction on the number of attachments: peel an
//! end-block cycle `C` with its path `P` so that `W = C P W' P^-1`, divide
//! `W'` on the remaining tree, then splice `C` back in. Where the neighbour
//! `C'` has become an end-block cycle of the remainder, its traversal is split
//! at the attachment vertex and the halves join the adjacent paths; otherwise
//! the path of the remainder's division through that vertex is split there.

use std::collections::BTreeSet;

use crate::error::DecompositionError;
use crate::flow::IntFlow;
use crate::graph::{EdgeId, SignedGraph, VertexId};
use crate::walk::{DirectedWalk, WalkStep};

use super::{detect_cycle_tree, CircuitClass, CycleTree, EulerianCycleTree};

/// One type III circuit `C_i P_{i+1} C_{i+1}` of the decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfTerm {
    pub edges: Vec<EdgeId>,
    pub class: CircuitClass,
    pub indicator: IntFlow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfDecomposition {
    /// Block-cycle indices of `C_0 .. C_k`.
    pub end_cycles: Vec<usize>,
    /// Step indices of `W` traversing each `C_i`.
    pub cycle_steps: Vec<Vec<usize>>,
    /// Step indices of `W` forming `P_1 .. P_{k+1}`.
    pub paths: Vec<Vec<usize>>,
    pub terms: Vec<HalfTerm>,
    /// Sum of the term indicators; exact halves are kept scaled by two, so
    /// the identity reads `doubled_sum == 2 * I_T`.
    pub doubled_sum: IntFlow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Segment {
    Cycle(usize, Vec<usize>),
    Path(Vec<usize>),
}

struct Divider<'a> {
    tree: &'a CycleTree,
    steps: &'a [WalkStep],
    /// Block cycle carrying each edge, if any.
    cycle_of_edge: Vec<Option<usize>>,
    alive: Vec<bool>,
}

impl Divider<'_> {
    fn cycle_of(&self, step: usize) -> Option<usize> {
        self.cycle_of_edge[self.steps[step].edge.0]
    }

    fn alive_attachments(&self, c: usize) -> Vec<usize> {
        self.tree
            .attachments_of(c)
            .filter(|(_, a)| self.alive[a.cycles[0]] && self.alive[a.cycles[1]])
            .map(|(i, _)| i)
            .collect()
    }

    fn alive_leaves(&self) -> Vec<usize> {
        (0..self.alive.len()).filter(|&c| self.alive[c] && self.alive_attachments(c).len() == 1).collect()
    }

    /// Rotation of the cyclic walk `w` that starts where cycle `c` begins.
    fn rotate_to_cycle(&self, w: &[usize], c: usize) -> Result<Vec<usize>, DecompositionError> {
        let n = w.len();
        let i = (0..n)
            .find(|&i| self.cycle_of(w[i]) == Some(c) && self.cycle_of(w[(i + n - 1) % n]) != Some(c))
            .ok_or_else(|| DecompositionError::BadWalk(format!("block cycle {c} is not traversed contiguously")))?;
        Ok((0..n).map(|k| w[(i + k) % n]).collect())
    }

    /// Cuts `w` at the traversals of the current end-block cycles.
    fn segment_directly(&self, w: &[usize]) -> Result<Vec<Segment>, DecompositionError> {
        let leaves = self.alive_leaves();
        let first = *leaves
            .iter()
            .min_by_key(|&&c| self.tree.block_cycles[c].min_edge())
            .ok_or_else(|| DecompositionError::BadWalk("no end-block cycle".into()))?;
        let w = self.rotate_to_cycle(w, first)?;
        let mut out: Vec<Segment> = Vec::new();
        for &s in &w {
            let leaf = self.cycle_of(s).filter(|c| leaves.contains(c));
            match (leaf, out.last_mut()) {
                (Some(c), Some(Segment::Cycle(d, steps))) if *d == c => steps.push(s),
                (Some(c), _) => out.push(Segment::Cycle(c, vec![s])),
                (None, Some(Segment::Path(steps))) => steps.push(s),
                (None, _) => out.push(Segment::Path(vec![s])),
            }
        }
        Ok(out)
    }

    fn divide(&mut self, w: Vec<usize>) -> Result<Vec<Segment>, DecompositionError> {
        let alive_count = self.alive.iter().filter(|&&a| a).count();
        if alive_count <= 3 {
            return self.segment_directly(&w);
        }
        let c = *self
            .alive_leaves()
            .iter()
            .min_by_key(|&&c| self.tree.block_cycles[c].min_edge())
            .expect("tree has leaves");
        let att = &self.tree.attachments[self.alive_attachments(c)[0]];
        let neighbour = att.cycles[1 - att.side(c)];
        let cycle_len = self.tree.block_cycles[c].len();
        let path_len = att.path.map_or(0, |p| self.tree.block_paths[p].traversal.len());

        let w = self.rotate_to_cycle(&w, c)?;
        let n = w.len();
        if n < cycle_len + 2 * path_len + 1 {
            return Err(DecompositionError::BadWalk("walk too short".into()));
        }
        let c_steps = w[..cycle_len].to_vec();
        let p = w[cycle_len..cycle_len + path_len].to_vec();
        let p_inv = w[n - path_len..].to_vec();
        let inner = w[cycle_len + path_len..n - path_len].to_vec();
        let entry = inner[0];

        self.alive[c] = false;
        let neighbour_is_end = self.alive_attachments(neighbour).len() == 1;
        let sub = self.divide(inner);
        self.alive[c] = true;
        let sub = sub?;

        let concat = |parts: &[&[usize]]| -> Vec<usize> { parts.iter().flat_map(|p| p.iter().copied()).collect() };
        if neighbour_is_end {
            let ci = sub
                .iter()
                .position(|s| matches!(s, Segment::Cycle(d, _) if *d == neighbour))
                .ok_or_else(|| DecompositionError::BadWalk("neighbour cycle missing from division".into()))?;
            let len = sub.len();
            let rot: Vec<Segment> = (0..len).map(|k| sub[(ci + 2 + k) % len].clone()).collect();
            let (Segment::Path(before), Segment::Cycle(_, around), Segment::Path(after)) =
                (&rot[len - 3], &rot[len - 2], &rot[len - 1])
            else {
                return Err(DecompositionError::BadWalk("division does not alternate".into()));
            };
            let j = around.iter().position(|&s| s == entry).filter(|&j| j > 0).ok_or_else(|| {
                DecompositionError::BadWalk("attachment vertex is not inside the neighbour traversal".into())
            })?;
            let (q, p_prime) = around.split_at(j);
            let mut out: Vec<Segment> = rot[..len - 3].to_vec();
            out.push(Segment::Path(concat(&[before, q, &p_inv])));
            out.push(Segment::Cycle(c, c_steps));
            out.push(Segment::Path(concat(&[&p, p_prime, after])));
            Ok(out)
        } else {
            let (pi, j) = sub
                .iter()
                .enumerate()
                .find_map(|(i, s)| match s {
                    Segment::Path(steps) => steps.iter().position(|&x| x == entry).map(|j| (i, j)),
                    Segment::Cycle(..) => None,
                })
                .filter(|&(_, j)| j > 0)
                .ok_or_else(|| DecompositionError::BadWalk("attachment vertex is not inside a path".into()))?;
            let Segment::Path(steps) = &sub[pi] else { unreachable!() };
            let (p_prime, q) = steps.split_at(j);
            let mut out: Vec<Segment> = sub[..pi].to_vec();
            out.push(Segment::Path(concat(&[p_prime, &p_inv])));
            out.push(Segment::Cycle(c, c_steps));
            out.push(Segment::Path(concat(&[&p, q])));
            out.extend_from_slice(&sub[pi + 1..]);
            Ok(out)
        }
    }
}

fn cycle_of_edge(tree: &CycleTree, num_edges: usize) -> Vec<Option<usize>> {
    let mut out = vec![None; num_edges];
    for (i, c) in tree.block_cycles.iter().enumerate() {
        for &(e, _) in &c.traversal {
            out[e.0] = Some(i);
        }
    }
    out
}

impl EulerianCycleTree {
    fn check_block_crossing_walk(&self, g: &SignedGraph, w: &DirectedWalk) -> Result<(), DecompositionError> {
        w.validate(g).map_err(|e| DecompositionError::BadWalk(e.to_string()))?;
        if !w.is_closed(g) {
            return Err(DecompositionError::BadWalk("walk is not closed".into()));
        }
        let mult = w.edge_multiplicity(g.num_edges());
        let ind = self.indicator_values(g.num_edges());
        if mult.iter().zip(&ind).any(|(&m, &i)| m as i64 != i) {
            return Err(DecompositionError::BadWalk(
                "walk must use block-cycle edges once and block-path edges twice".into(),
            ));
        }
        Ok(())
    }

    /// Half-integer decomposition along the block-crossing closed walk `w`.
    pub fn half_integer_decomposition(
        &self,
        g: &SignedGraph,
        w: &DirectedWalk,
    ) -> Result<HalfDecomposition, DecompositionError> {
        if self.classify(g).is_circuit() {
            return Err(DecompositionError::IsCircuit);
        }
        self.check_block_crossing_walk(g, w)?;
        let mut divider = Divider {
            tree: self.tree(),
            steps: &w.steps,
            cycle_of_edge: cycle_of_edge(self.tree(), g.num_edges()),
            alive: vec![true; self.block_cycles.len()],
        };
        let segments = divider.divide((0..w.len()).collect())?;
        assemble(g, w, &segments)
    }

    /// Division obtained by cutting `w` directly at the end-block cycles,
    /// without the inductive splicing. Used to cross-check the induction.
    pub fn half_integer_decomposition_direct(
        &self,
        g: &SignedGraph,
        w: &DirectedWalk,
    ) -> Result<HalfDecomposition, DecompositionError> {
        if self.classify(g).is_circuit() {
            return Err(DecompositionError::IsCircuit);
        }
        self.check_block_crossing_walk(g, w)?;
        let divider = Divider {
            tree: self.tree(),
            steps: &w.steps,
            cycle_of_edge: cycle_of_edge(self.tree(), g.num_edges()),
            alive: vec![true; self.block_cycles.len()],
        };
        let segments = divider.segment_directly(&(0..w.len()).collect::<Vec<_>>())?;
        assemble(g, w, &segments)
    }
}

fn assemble(g: &SignedGraph, w: &DirectedWalk, segments: &[Segment]) -> Result<HalfDecomposition, DecompositionError> {
    let mut end_cycles = Vec::new();
    let mut cycle_steps = Vec::new();
    let mut paths = Vec::new();
    for (i, seg) in segments.iter().enumerate() {
        match (i % 2, seg) {
            (0, Segment::Cycle(c, steps)) => {
                end_cycles.push(*c);
                cycle_steps.push(steps.clone());
            }
            (1, Segment::Path(steps)) => paths.push(steps.clone()),
            _ => return Err(DecompositionError::BadWalk("division does not alternate cycles and paths".into())),
        }
    }
    if end_cycles.len() != paths.len() || end_cycles.len() < 2 {
        return Err(DecompositionError::BadWalk("division needs at least two end-block cycles".into()));
    }
    let mut out =
        HalfDecomposition { end_cycles, cycle_steps, paths, terms: Vec::new(), doubled_sum: IntFlow::zero(g.num_edges()) };
    out.fill_terms(g, w);
    Ok(out)
}

impl HalfDecomposition {
    pub fn k(&self) -> usize {
        self.end_cycles.len() - 1
    }

    fn edges_of(steps: &[usize], w: &DirectedWalk) -> BTreeSet<EdgeId> {
        steps.iter().map(|&s| w.steps[s].edge).collect()
    }

    /// Builds the circuits `C_i P_{i+1} C_{i+1}` and the summed indicator.
    fn fill_terms(&mut self, g: &SignedGraph, w: &DirectedWalk) {
        let m = self.end_cycles.len();
        let mut doubled = IntFlow::zero(g.num_edges());
        let mut terms = Vec::with_capacity(m);
        for i in 0..m {
            let mut edges = Self::edges_of(&self.cycle_steps[i], w);
            edges.extend(Self::edges_of(&self.paths[i], w));
            edges.extend(Self::edges_of(&self.cycle_steps[(i + 1) % m], w));
            let edges: Vec<EdgeId> = edges.into_iter().collect();
            let (class, indicator) = match detect_cycle_tree(g, &edges) {
                Ok(t) => (t.classify(g), t.indicator(g.num_edges())),
                Err(_) => (CircuitClass::NotCircuit, IntFlow::zero(g.num_edges())),
            };
            doubled = &doubled + &indicator;
            terms.push(HalfTerm { edges, class, indicator });
        }
        self.terms = terms;
        self.doubled_sum = doubled;
    }

    /// Checks every defining condition of the decomposition against the
    /// tree and the walk it was cut from.
    pub fn verify(&self, g: &SignedGraph, tree: &EulerianCycleTree, w: &DirectedWalk) -> Result<(), String> {
        let n = w.len();
        // the segments tile a rotation of the walk
        let order: Vec<usize> = self
            .cycle_steps
            .iter()
            .zip(&self.paths)
            .flat_map(|(c, p)| c.iter().chain(p.iter()).copied())
            .collect();
        if order.len() != n || order.iter().enumerate().any(|(i, &s)| s != (order[0] + i) % n) {
            return Err("segments do not tile the walk in order".into());
        }
        if self.k() < 1 {
            return Err("k must be at least 1".into());
        }
        let mut ends: Vec<usize> = self.end_cycles.clone();
        ends.sort();
        if ends != tree.end_block_cycles() {
            return Err("C_i are not exactly the end-block cycles".into());
        }
        for (c, steps) in self.end_cycles.iter().zip(&self.cycle_steps) {
            if Self::edges_of(steps, w).into_iter().collect::<Vec<_>>() != tree.block_cycles[*c].edges()
                || steps.len() != tree.block_cycles[*c].len()
            {
                return Err(format!("segment of end-block cycle {c} is not its whole traversal"));
            }
        }
        for (i, p) in self.paths.iter().enumerate() {
            if p.is_empty() {
                return Err(format!("P_{} has length zero", i + 1));
            }
            let mut seen: BTreeSet<VertexId> = BTreeSet::new();
            seen.insert(g.slot_vertex(w.steps[p[0]].from_slot()));
            for &s in p {
                if !seen.insert(g.slot_vertex(w.steps[s].to_slot())) {
                    return Err(format!("P_{} is not a simple open path", i + 1));
                }
            }
        }
        let mut uses = vec![0usize; g.num_edges()];
        for p in &self.paths {
            for &s in p {
                uses[w.steps[s].edge.0] += 1;
            }
        }
        let end_set: BTreeSet<usize> = self.end_cycles.iter().copied().collect();
        for (ci, c) in tree.block_cycles.iter().enumerate() {
            let want = if end_set.contains(&ci) { 0 } else { 1 };
            if c.traversal.iter().any(|&(e, _)| uses[e.0] != want) {
                return Err(format!("block cycle {ci} edges are not covered {want} time(s) by the paths"));
            }
        }
        for p in &tree.block_paths {
            if p.traversal.iter().any(|&(e, _)| uses[e.0] != 2) {
                return Err("block-path edges are not covered twice by the paths".into());
            }
        }
        let eps_w = w.direction(g.num_edges());
        for (i, term) in self.terms.iter().enumerate() {
            if !matches!(term.class, CircuitClass::TypeIII { .. }) {
                return Err(format!("term {i} is {} rather than TypeIII", term.class.name()));
            }
            let t = detect_cycle_tree(g, &term.edges).map_err(|e| e.to_string())?;
            if !t.is_direction(g, &eps_w.restricted(term.edges.iter().copied())) {
                return Err(format!("term {i} is not directed by the walk"));
            }
        }
        let twice: Vec<i64> = tree.indicator_values(g.num_edges()).iter().map(|x| 2 * x).collect();
        if self.doubled_sum.values() != twice.as_slice() {
            return Err("sum of term indicators differs from twice the tree indicator".into());
        }
        Ok(())
    }
}
