//! Signed multigraphs with loops and parallel edges.
//!
//! Vertices and edges carry opaque string ids in the external format and are
//! addressed by dense indices internally. Every iteration order is the input
//! order, so all downstream algorithms are deterministic.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Edge sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn from_int(value: i64) -> Option<Self> {
        match value {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_positive() { "+" } else { "-" })
    }
}

/// One end of an edge: a half-edge. Both slots of a loop sit at the same
/// vertex but stay distinct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub edge: EdgeId,
    pub end: u8,
}

impl Slot {
    pub fn new(edge: EdgeId, end: u8) -> Self {
        debug_assert!(end < 2);
        Slot { edge, end }
    }

    pub fn other(self) -> Self {
        Slot { edge: self.edge, end: 1 - self.end }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub ends: [VertexId; 2],
    pub sign: Sign,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }
}

/// Raw edge record as it appears in input files, before validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: String,
    pub ends: [String; 2],
    pub sign: i64,
}

impl EdgeSpec {
    pub fn new(id: &str, a: &str, b: &str, sign: i64) -> Self {
        EdgeSpec { id: id.to_string(), ends: [a.to_string(), b.to_string()], sign }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGraph {
    vertex_names: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    /// Slots incident to each vertex, in edge order.
    incidence: Vec<Vec<Slot>>,
}

/// Checks the graph invariants on raw input and reports every violation.
pub fn validate_graph(vertices: &[String], edges: &[EdgeSpec]) -> Result<(), Vec<GraphError>> {
    let mut errors = Vec::new();
    let mut seen_vertices = HashMap::new();
    for v in vertices {
        if seen_vertices.insert(v.as_str(), ()).is_some() {
            errors.push(GraphError::DuplicateVertex(v.clone()));
        }
    }
    let mut seen_edges = HashMap::new();
    for e in edges {
        if seen_edges.insert(e.id.as_str(), ()).is_some() {
            errors.push(GraphError::DuplicateEdge(e.id.clone()));
        }
        for end in &e.ends {
            if !seen_vertices.contains_key(end.as_str()) {
                errors.push(GraphError::DanglingEnd { edge: e.id.clone(), vertex: end.clone() });
            }
        }
        if Sign::from_int(e.sign).is_none() {
            errors.push(GraphError::BadSign { edge: e.id.clone(), sign: e.sign });
        }
    }
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

impl SignedGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<EdgeSpec>) -> Result<Self, Vec<GraphError>> {
        validate_graph(&vertices, &edges)?;
        let vertex_index: HashMap<String, VertexId> =
            vertices.iter().enumerate().map(|(i, v)| (v.clone(), VertexId(i))).collect();
        let mut incidence = vec![Vec::new(); vertices.len()];
        let mut edge_index = HashMap::new();
        let mut built = Vec::with_capacity(edges.len());
        for (i, e) in edges.into_iter().enumerate() {
            let ends = [vertex_index[&e.ends[0]], vertex_index[&e.ends[1]]];
            for (end, v) in ends.iter().enumerate() {
                incidence[v.0].push(Slot::new(EdgeId(i), end as u8));
            }
            edge_index.insert(e.id.clone(), EdgeId(i));
            built.push(Edge { name: e.id, ends, sign: Sign::from_int(e.sign).expect("validated") });
        }
        Ok(SignedGraph { vertex_names: vertices, edges: built, vertex_index, edge_index, incidence })
    }

    /// Convenience constructor for literals, mostly used by tests and fixtures.
    pub fn from_literal(vertices: &[&str], edges: &[(&str, &str, &str, i64)]) -> Result<Self, Vec<GraphError>> {
        SignedGraph::new(
            vertices.iter().map(|v| v.to_string()).collect(),
            edges.iter().map(|&(id, a, b, s)| EdgeSpec::new(id, a, b, s)).collect(),
        )
    }

    /// Builds a graph from dense indices; edge `i` is named `e{i}` and vertex
    /// `j` is named `v{j}`.
    pub fn from_indexed(num_vertices: usize, edges: &[(usize, usize, Sign)]) -> Self {
        let vertices = (0..num_vertices).map(|j| format!("v{j}")).collect();
        let specs = edges
            .iter()
            .enumerate()
            .map(|(i, &(a, b, s))| EdgeSpec::new(&format!("e{i}"), &format!("v{a}"), &format!("v{b}"), s.value() as i64))
            .collect();
        SignedGraph::new(vertices, specs).expect("indexed graph is well formed")
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len()).map(VertexId)
    }

    pub fn sign(&self, e: EdgeId) -> Sign {
        self.edges[e.0].sign
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    /// Vertex at the given slot.
    pub fn slot_vertex(&self, s: Slot) -> VertexId {
        self.edges[s.edge.0].ends[s.end as usize]
    }

    /// Slots incident to `v`; a loop at `v` contributes both of its slots.
    pub fn slots_at(&self, v: VertexId) -> &[Slot] {
        &self.incidence[v.0]
    }

    pub fn edge_specs(&self) -> Vec<EdgeSpec> {
        self.edges
            .iter()
            .map(|e| EdgeSpec {
                id: e.name.clone(),
                ends: [self.vertex_names[e.ends[0].0].clone(), self.vertex_names[e.ends[1].0].clone()],
                sign: e.sign.value() as i64,
            })
            .collect()
    }

    /// Copy of the graph with the sign of `e` switched.
    pub fn with_flipped_sign(&self, e: EdgeId) -> SignedGraph {
        let mut g = self.clone();
        g.edges[e.0].sign = g.edges[e.0].sign.flipped();
        g
    }
}

/// Product of edge signs over a multiset of edges; the empty product is `+`.
pub fn sign_of_edge_set<I>(g: &SignedGraph, edges: I) -> Sign
where
    I: IntoIterator<Item = EdgeId>,
{
    edges.into_iter().fold(Sign::Positive, |acc, e| acc * g.sign(e))
}
