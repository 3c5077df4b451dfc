//! Cycle-trees: connected signed subgraphs made of edge-disjoint block cycles
//! joined by vertex-disjoint block paths in a tree-like pattern.
//!
//! Recognition runs on the block decomposition of the edge-induced subgraph:
//! every block must be a cycle or a bridge, bridges must chain into simple
//! paths that end on cycles, and no vertex may sit on three cycles or join a
//! path to a vertex shared by two cycles. A zero-length connection between
//! two cycles is recorded as a shared vertex, never as a path object.

mod canonical;
mod direction;
mod half;

use std::collections::BTreeSet;
use std::ops::Deref;

use serde::Serialize;

use crate::blocks::{blocks, is_connected};
use crate::error::{CycleTreeError, DirectionError};
use crate::flow::IntFlow;
use crate::graph::{EdgeId, Sign, SignedGraph, Slot, VertexId};
use crate::orientation::{coupling, Orientation};

pub use half::{HalfDecomposition, HalfTerm};

/// A simple cycle stored as a closed traversal: step `i` leaves
/// `vertices[i]` and arrives at `vertices[(i + 1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCycle {
    pub vertices: Vec<VertexId>,
    pub traversal: Vec<(EdgeId, u8)>,
    pub sign: Sign,
}

impl BlockCycle {
    pub fn len(&self) -> usize {
        self.traversal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traversal.is_empty()
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        let mut e: Vec<EdgeId> = self.traversal.iter().map(|t| t.0).collect();
        e.sort();
        e
    }

    pub fn min_edge(&self) -> EdgeId {
        self.traversal.iter().map(|t| t.0).min().expect("cycle has edges")
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.traversal.iter().any(|t| t.0 == e)
    }

    pub fn is_balanced(&self) -> bool {
        self.sign == Sign::Positive
    }

    /// Closed traversal starting and ending at `v`. Of the two senses, the
    /// one whose first edge has the smaller id is used.
    pub fn traversal_from(&self, v: VertexId) -> Vec<(EdgeId, u8)> {
        let n = self.traversal.len();
        let i = self.vertices.iter().position(|&x| x == v).expect("vertex on cycle");
        let forward: Vec<(EdgeId, u8)> = (0..n).map(|k| self.traversal[(i + k) % n]).collect();
        if n == 1 {
            return forward;
        }
        let backward: Vec<(EdgeId, u8)> =
            (1..=n).map(|k| self.traversal[(i + n - k) % n]).map(|(e, fe)| (e, 1 - fe)).collect();
        if backward[0].0 < forward[0].0 {
            backward
        } else {
            forward
        }
    }
}

/// A simple open path of positive length, stored as a traversal from
/// `vertices[0]` to `vertices[len]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPath {
    pub vertices: Vec<VertexId>,
    pub traversal: Vec<(EdgeId, u8)>,
}

impl BlockPath {
    pub fn edges(&self) -> Vec<EdgeId> {
        let mut e: Vec<EdgeId> = self.traversal.iter().map(|t| t.0).collect();
        e.sort();
        e
    }

    pub fn endpoints(&self) -> [VertexId; 2] {
        [self.vertices[0], *self.vertices.last().unwrap()]
    }

    /// Traversal from the endpoint `v` to the other endpoint.
    pub fn traversal_from(&self, v: VertexId) -> Vec<(EdgeId, u8)> {
        if v == self.vertices[0] {
            self.traversal.clone()
        } else {
            debug_assert_eq!(Some(&v), self.vertices.last());
            self.traversal.iter().rev().map(|&(e, fe)| (e, 1 - fe)).collect()
        }
    }
}

/// Connection between two block cycles: either a shared vertex or a block
/// path. `vertices[i]` lies on `cycles[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attachment {
    pub cycles: [usize; 2],
    pub vertices: [VertexId; 2],
    pub path: Option<usize>,
}

impl Attachment {
    /// Index (0 or 1) of `cycle` within this attachment.
    fn side(&self, cycle: usize) -> usize {
        if self.cycles[0] == cycle {
            0
        } else {
            debug_assert_eq!(self.cycles[1], cycle);
            1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleTree {
    /// Edge set of the subgraph, sorted.
    pub edges: Vec<EdgeId>,
    /// Block cycles, sorted by smallest edge id.
    pub block_cycles: Vec<BlockCycle>,
    /// Block paths, sorted by smallest edge id.
    pub block_paths: Vec<BlockPath>,
    pub attachments: Vec<Attachment>,
    pub intersection_vertices: BTreeSet<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleParity {
    pub cycle: usize,
    pub balanced: bool,
    pub intersections: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub holds: bool,
    pub cycles: Vec<CycleParity>,
}

/// Circuit type of an Eulerian cycle-tree, with indices into its block cycles
/// and block paths as witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircuitClass {
    /// A single balanced cycle.
    TypeI { cycle: usize },
    /// Two unbalanced cycles sharing one vertex.
    TypeII { cycles: [usize; 2], vertex: VertexId },
    /// Two vertex-disjoint unbalanced cycles joined by a path.
    TypeIII { cycles: [usize; 2], path: usize },
    NotCircuit,
}

impl CircuitClass {
    pub fn name(&self) -> &'static str {
        match self {
            CircuitClass::TypeI { .. } => "TypeI",
            CircuitClass::TypeII { .. } => "TypeII",
            CircuitClass::TypeIII { .. } => "TypeIII",
            CircuitClass::NotCircuit => "NotCircuit",
        }
    }

    pub fn is_circuit(&self) -> bool {
        !matches!(self, CircuitClass::NotCircuit)
    }
}

fn closed_traversal(g: &SignedGraph, block_edges: &[EdgeId]) -> (Vec<VertexId>, Vec<(EdgeId, u8)>) {
    let first = block_edges[0];
    let start = g.edge(first).ends[0];
    let mut used = vec![false; block_edges.len()];
    used[0] = true;
    let mut vertices = vec![start];
    let mut traversal = vec![(first, 0u8)];
    let mut at = g.edge(first).ends[1];
    while traversal.len() < block_edges.len() {
        let (k, end) = block_edges
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .find_map(|(k, &e)| g.edge(e).ends.iter().position(|&x| x == at).map(|end| (k, end as u8)))
            .expect("cycle block is 2-regular");
        used[k] = true;
        vertices.push(at);
        traversal.push((block_edges[k], end));
        at = g.edge(block_edges[k]).ends[1 - end as usize];
    }
    debug_assert_eq!(at, start);
    (vertices, traversal)
}

/// Recognizes the subgraph induced by `edges` as a cycle-tree and returns
/// its unique decomposition into block cycles and block paths.
pub fn detect_cycle_tree(g: &SignedGraph, edges: &[EdgeId]) -> Result<CycleTree, CycleTreeError> {
    let mut edges: Vec<EdgeId> = edges.to_vec();
    edges.sort();
    edges.dedup();
    if edges.is_empty() {
        return Err(CycleTreeError::Empty);
    }
    if !is_connected(g, &edges) {
        return Err(CycleTreeError::Disconnected);
    }
    let blocks = blocks(g, &edges);
    let mut cycle_blocks = Vec::new();
    let mut bridges = Vec::new();
    for b in &blocks {
        if b.is_bridge(g) {
            bridges.push(b.edges[0]);
        } else if b.is_cycle(g) {
            cycle_blocks.push(b);
        } else {
            return Err(CycleTreeError::CyclesShareEdges);
        }
    }
    if cycle_blocks.is_empty() {
        return Err(CycleTreeError::NoCycle);
    }

    let nv = g.num_vertices();
    let mut cycles_at: Vec<Vec<usize>> = vec![Vec::new(); nv];
    let mut bridges_at: Vec<Vec<EdgeId>> = vec![Vec::new(); nv];
    for (i, b) in cycle_blocks.iter().enumerate() {
        for &v in &b.vertices {
            cycles_at[v.0].push(i);
        }
    }
    for &e in &bridges {
        for v in g.edge(e).ends {
            bridges_at[v.0].push(e);
        }
    }
    let name = |v: usize| g.vertex_name(VertexId(v)).to_string();
    let touched: BTreeSet<VertexId> = edges.iter().flat_map(|&e| g.edge(e).ends).collect();
    for v in &touched {
        let (c, b) = (cycles_at[v.0].len(), bridges_at[v.0].len());
        match (c, b) {
            (c, _) if c >= 3 => return Err(CycleTreeError::ThreeCyclesMeet(name(v.0))),
            (2, b) if b > 0 => return Err(CycleTreeError::PathAtSharedVertex(name(v.0))),
            (1, b) if b >= 2 => return Err(CycleTreeError::PathsMeet(name(v.0))),
            (0, 1) => return Err(CycleTreeError::PendantPath(name(v.0))),
            (0, b) if b >= 3 => return Err(CycleTreeError::PathsMeet(name(v.0))),
            _ => {}
        }
    }

    let block_cycles: Vec<BlockCycle> = cycle_blocks
        .iter()
        .map(|b| {
            let (vertices, traversal) = closed_traversal(g, &b.edges);
            let sign = crate::graph::sign_of_edge_set(g, b.edges.iter().copied());
            BlockCycle { vertices, traversal, sign }
        })
        .collect();

    // Chain bridges into paths, starting from the smaller-id endpoint.
    let mut used = vec![false; g.num_edges()];
    let mut block_paths = Vec::new();
    for &e in &bridges {
        if used[e.0] {
            continue;
        }
        // walk to one end of the chain containing e
        let mut end_vertex = g.edge(e).ends[0];
        let mut via = e;
        while cycles_at[end_vertex.0].is_empty() {
            let next = *bridges_at[end_vertex.0].iter().find(|&&x| x != via).expect("interior vertex has two bridges");
            let ends = g.edge(next).ends;
            end_vertex = if ends[0] == end_vertex { ends[1] } else { ends[0] };
            via = next;
        }
        let mut chain = trace_path(g, end_vertex, via, &cycles_at, &bridges_at);
        if chain.vertices.last().unwrap() < &chain.vertices[0] {
            chain = BlockPath {
                vertices: chain.vertices.iter().rev().copied().collect(),
                traversal: chain.traversal.iter().rev().map(|&(x, fe)| (x, 1 - fe)).collect(),
            };
        }
        for &(x, _) in &chain.traversal {
            used[x.0] = true;
        }
        block_paths.push(chain);
    }
    block_paths.sort_by_key(|p| p.edges()[0]);

    let mut attachments = Vec::new();
    let mut intersection_vertices = BTreeSet::new();
    for (pi, p) in block_paths.iter().enumerate() {
        let [a, b] = p.endpoints();
        intersection_vertices.insert(a);
        intersection_vertices.insert(b);
        attachments.push(Attachment { cycles: [cycles_at[a.0][0], cycles_at[b.0][0]], vertices: [a, b], path: Some(pi) });
    }
    for v in &touched {
        if cycles_at[v.0].len() == 2 {
            intersection_vertices.insert(*v);
            attachments.push(Attachment { cycles: [cycles_at[v.0][0], cycles_at[v.0][1]], vertices: [*v, *v], path: None });
        }
    }
    attachments.sort_by_key(|a| (a.cycles, a.vertices));

    Ok(CycleTree { edges, block_cycles, block_paths, attachments, intersection_vertices })
}

/// Follows a chain of bridges starting at `from` via edge `first` until it
/// reaches a cycle vertex.
fn trace_path(
    g: &SignedGraph,
    from: VertexId,
    first: EdgeId,
    cycles_at: &[Vec<usize>],
    bridges_at: &[Vec<EdgeId>],
) -> BlockPath {
    let mut vertices = vec![from];
    let mut traversal = Vec::new();
    let mut at = from;
    let mut via = first;
    loop {
        let ends = g.edge(via).ends;
        let fe = if ends[0] == at { 0u8 } else { 1u8 };
        traversal.push((via, fe));
        at = ends[1 - fe as usize];
        vertices.push(at);
        if !cycles_at[at.0].is_empty() {
            break;
        }
        via = *bridges_at[at.0].iter().find(|&&x| x != via).expect("interior vertex has two bridges");
    }
    BlockPath { vertices, traversal }
}

impl CycleTree {
    pub fn num_cycles(&self) -> usize {
        self.block_cycles.len()
    }

    /// Attachments incident to block cycle `c`.
    pub fn attachments_of(&self, c: usize) -> impl Iterator<Item = (usize, &Attachment)> + '_ {
        self.attachments.iter().enumerate().filter(move |(_, a)| a.cycles.contains(&c))
    }

    /// Number of intersection vertices on block cycle `c`.
    pub fn intersections_on(&self, c: usize) -> usize {
        self.block_cycles[c].vertices.iter().filter(|v| self.intersection_vertices.contains(v)).count()
    }

    /// Block cycles with exactly one intersection vertex.
    pub fn end_block_cycles(&self) -> Vec<usize> {
        (0..self.block_cycles.len()).filter(|&c| self.intersections_on(c) == 1).collect()
    }

    pub fn check_parity(&self) -> ParityReport {
        let cycles: Vec<CycleParity> = self
            .block_cycles
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let n = self.intersections_on(i);
                let balanced = c.is_balanced();
                CycleParity { cycle: i, balanced, intersections: n, ok: n.is_multiple_of(2) == balanced }
            })
            .collect();
        ParityReport { holds: cycles.iter().all(|c| c.ok), cycles }
    }

    /// 1 on block-cycle edges, 2 on block-path edges, 0 elsewhere.
    pub fn indicator_values(&self, num_edges: usize) -> Vec<i64> {
        let mut out = vec![0; num_edges];
        for c in &self.block_cycles {
            for &(e, _) in &c.traversal {
                out[e.0] = 1;
            }
        }
        for p in &self.block_paths {
            for &(e, _) in &p.traversal {
                out[e.0] = 2;
            }
        }
        out
    }

    pub fn indicator(&self, num_edges: usize) -> IntFlow {
        IntFlow::new(self.indicator_values(num_edges))
    }

    pub fn classify(&self, _g: &SignedGraph) -> CircuitClass {
        let cycles = &self.block_cycles;
        match (cycles.len(), self.block_paths.len()) {
            (1, 0) if cycles[0].is_balanced() => CircuitClass::TypeI { cycle: 0 },
            (2, 0) if !cycles[0].is_balanced() && !cycles[1].is_balanced() => {
                let vertex = self.attachments[0].vertices[0];
                CircuitClass::TypeII { cycles: [0, 1], vertex }
            }
            (2, 1) if !cycles[0].is_balanced() && !cycles[1].is_balanced() => {
                CircuitClass::TypeIII { cycles: [0, 1], path: 0 }
            }
            _ => CircuitClass::NotCircuit,
        }
    }

    /// Checks the defining properties of a direction: no vertex of the tree is
    /// a sink or a source, and every block cycle has a sink or a source at
    /// each of its intersection vertices.
    pub fn is_direction(&self, g: &SignedGraph, eps: &Orientation) -> bool {
        if !self.edges.iter().all(|&e| eps.contains(e)) {
            return false;
        }
        if !self.edges.iter().all(|&e| {
            let v = eps.edge_values(e).unwrap();
            v[0] * v[1] == -g.sign(e).value()
        }) {
            return false;
        }
        let in_tree = |s: &Slot| self.edges.binary_search(&s.edge).is_ok();
        let touched: BTreeSet<VertexId> = self.edges.iter().flat_map(|&e| g.edge(e).ends).collect();
        for v in touched {
            let values: Vec<i8> = g.slots_at(v).iter().filter(|s| in_tree(s)).map(|&s| eps.at(s)).collect();
            if values.iter().all(|&x| x == values[0]) {
                return false;
            }
        }
        for c in &self.block_cycles {
            for &v in &c.vertices {
                if !self.intersection_vertices.contains(&v) {
                    continue;
                }
                let values: Vec<i8> =
                    g.slots_at(v).iter().filter(|s| c.contains_edge(s.edge)).map(|&s| eps.at(s)).collect();
                if !values.iter().all(|&x| x == values[0]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn into_eulerian(self) -> Result<EulerianCycleTree, DirectionError> {
        let parity = self.check_parity();
        if parity.holds {
            Ok(EulerianCycleTree { tree: self, parity })
        } else {
            Err(DirectionError::NoDirection)
        }
    }
}

/// A cycle-tree whose parity condition has been verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerianCycleTree {
    tree: CycleTree,
    parity: ParityReport,
}

impl Deref for EulerianCycleTree {
    type Target = CycleTree;

    fn deref(&self) -> &CycleTree {
        &self.tree
    }
}

impl EulerianCycleTree {
    pub fn tree(&self) -> &CycleTree {
        &self.tree
    }

    pub fn parity(&self) -> &ParityReport {
        &self.parity
    }

    /// Coupling of `eps` with the tree direction, times the indicator.
    pub fn characteristic_flow(&self, g: &SignedGraph, eps_t: &Orientation, eps: &Orientation) -> IntFlow {
        let ind = self.indicator_values(g.num_edges());
        IntFlow::new(
            ind.iter().enumerate().map(|(i, &x)| coupling(eps, eps_t, EdgeId(i)) as i64 * x).collect(),
        )
    }
}

/// Detects the cycle-tree and verifies parity in one go.
pub fn detect_eulerian_cycle_tree(g: &SignedGraph, edges: &[EdgeId]) -> Option<EulerianCycleTree> {
    detect_cycle_tree(g, edges).ok()?.into_eulerian().ok()
}
