//! Block (biconnected component) decomposition of edge-induced subgraphs.
//!
//! Works on the underlying unsigned multigraph. Parallel edges are told apart
//! by edge id, and every loop is its own block. A vertex is a cut-point iff it
//! lies on two or more blocks.

use std::collections::BTreeSet;

use crate::graph::{EdgeId, SignedGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Edges of the block, sorted by id.
    pub edges: Vec<EdgeId>,
    /// Vertices of the block, sorted by id.
    pub vertices: Vec<VertexId>,
}

impl Block {
    pub fn is_bridge(&self, g: &SignedGraph) -> bool {
        self.edges.len() == 1 && !g.edge(self.edges[0]).is_loop()
    }

    /// A block is a cycle iff it has as many edges as vertices and is not a
    /// bridge. This covers loops (1,1) and parallel pairs (2,2).
    pub fn is_cycle(&self, g: &SignedGraph) -> bool {
        !self.is_bridge(g) && self.edges.len() == self.vertices.len()
    }
}

struct Tarjan<'a> {
    g: &'a SignedGraph,
    in_set: Vec<bool>,
    disc: Vec<Option<usize>>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<EdgeId>,
    blocks: Vec<Block>,
}

impl Tarjan<'_> {
    fn visit(&mut self, u: VertexId, parent: Option<EdgeId>) {
        self.disc[u.0] = Some(self.time);
        self.low[u.0] = self.time;
        self.time += 1;
        for &slot in self.g.slots_at(u) {
            let e = slot.edge;
            if !self.in_set[e.0] || self.g.edge(e).is_loop() || Some(e) == parent {
                continue;
            }
            let w = self.g.slot_vertex(slot.other());
            match self.disc[w.0] {
                None => {
                    self.stack.push(e);
                    self.visit(w, Some(e));
                    self.low[u.0] = self.low[u.0].min(self.low[w.0]);
                    if self.low[w.0] >= self.disc[u.0].unwrap() {
                        self.pop_block(e);
                    }
                }
                Some(dw) if dw < self.disc[u.0].unwrap() => {
                    self.stack.push(e);
                    self.low[u.0] = self.low[u.0].min(dw);
                }
                Some(_) => {}
            }
        }
    }

    fn pop_block(&mut self, until: EdgeId) {
        let mut edges = Vec::new();
        while let Some(e) = self.stack.pop() {
            edges.push(e);
            if e == until {
                break;
            }
        }
        self.blocks.push(make_block(self.g, edges));
    }
}

fn make_block(g: &SignedGraph, mut edges: Vec<EdgeId>) -> Block {
    edges.sort();
    let vertices: BTreeSet<VertexId> = edges.iter().flat_map(|&e| g.edge(e).ends).collect();
    Block { edges, vertices: vertices.into_iter().collect() }
}

/// Vertices touched by the given edges, sorted.
pub fn vertices_of(g: &SignedGraph, edges: &[EdgeId]) -> Vec<VertexId> {
    let set: BTreeSet<VertexId> = edges.iter().flat_map(|&e| g.edge(e).ends).collect();
    set.into_iter().collect()
}

/// Blocks of the subgraph induced by `edges`, sorted by smallest edge id.
pub fn blocks(g: &SignedGraph, edges: &[EdgeId]) -> Vec<Block> {
    let mut in_set = vec![false; g.num_edges()];
    for &e in edges {
        in_set[e.0] = true;
    }
    let mut t = Tarjan {
        g,
        in_set,
        disc: vec![None; g.num_vertices()],
        low: vec![0; g.num_vertices()],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in vertices_of(g, edges) {
        if t.disc[v.0].is_none() {
            t.visit(v, None);
        }
    }
    let mut out = t.blocks;
    for &e in edges {
        if g.edge(e).is_loop() {
            out.push(make_block(g, vec![e]));
        }
    }
    out.sort_by_key(|b| b.edges[0]);
    out
}

/// Cut-points of the subgraph induced by `edges`.
pub fn cut_points(g: &SignedGraph, edges: &[EdgeId]) -> BTreeSet<VertexId> {
    let mut count = vec![0usize; g.num_vertices()];
    for b in blocks(g, edges) {
        for v in b.vertices {
            count[v.0] += 1;
        }
    }
    count.iter().enumerate().filter(|(_, &c)| c >= 2).map(|(i, _)| VertexId(i)).collect()
}

/// Whether the subgraph induced by `edges` is connected. The empty edge set
/// counts as disconnected.
pub fn is_connected(g: &SignedGraph, edges: &[EdgeId]) -> bool {
    let vertices = vertices_of(g, edges);
    let Some(&start) = vertices.first() else {
        return false;
    };
    let mut parent: Vec<usize> = (0..g.num_vertices()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &e in edges {
        let [a, b] = g.edge(e).ends;
        let (ra, rb) = (find(&mut parent, a.0), find(&mut parent, b.0));
        parent[ra] = rb;
    }
    let root = find(&mut parent, start.0);
    vertices.iter().all(|v| find(&mut parent, v.0) == root)
}
