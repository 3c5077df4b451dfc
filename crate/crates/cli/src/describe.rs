//! JSON views of library values, keyed by the input file's ids.

use serde_json::{json, Value};
use sigflow::cycletree::HalfDecomposition;
use sigflow::fra::FraTrace;
use sigflow::graph::{EdgeId, VertexId};
use sigflow::io::walk_record;
use sigflow::walk::DirectedWalk;
use sigflow::{CircuitClass, CycleTree, IntFlow, Orientation, ParityReport, SignedGraph};

pub fn edge_names(g: &SignedGraph, edges: impl IntoIterator<Item = EdgeId>) -> Value {
    edges.into_iter().map(|e| g.edge_name(e)).collect::<Vec<_>>().into()
}

pub fn vertex_names(g: &SignedGraph, vs: &[VertexId]) -> Value {
    vs.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>().into()
}

/// `{edge: value}` over the whole graph.
pub fn flow(g: &SignedGraph, f: &IntFlow) -> Value {
    Value::Object(g.edge_ids().map(|e| (g.edge_name(e).to_string(), f.get(e).into())).collect())
}

/// `{edge: [s0, s1]}` over the orientation's domain.
pub fn orientation(g: &SignedGraph, eps: &Orientation) -> Value {
    Value::Object(
        g.edge_ids()
            .filter_map(|e| eps.edge_values(e).map(|v| (g.edge_name(e).to_string(), json!([v[0], v[1]]))))
            .collect(),
    )
}

pub fn walk(g: &SignedGraph, w: &DirectedWalk) -> Value {
    serde_json::to_value(walk_record(g, w)).expect("walk serializes")
}

pub fn tree(g: &SignedGraph, t: &CycleTree) -> Value {
    let cycles: Vec<Value> = t
        .block_cycles
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "edges": edge_names(g, c.traversal.iter().map(|s| s.0)),
                "vertices": vertex_names(g, &c.vertices),
                "balanced": c.is_balanced(),
                "intersections": t.intersections_on(i),
            })
        })
        .collect();
    let paths: Vec<Value> = t
        .block_paths
        .iter()
        .map(|p| {
            json!({
                "edges": edge_names(g, p.traversal.iter().map(|s| s.0)),
                "endpoints": vertex_names(g, &p.endpoints()),
            })
        })
        .collect();
    json!({
        "edges": edge_names(g, t.edges.iter().copied()),
        "block_cycles": cycles,
        "block_paths": paths,
        "end_block_cycles": t.end_block_cycles().len(),
    })
}

pub fn class(g: &SignedGraph, t: &CycleTree, c: &CircuitClass) -> Value {
    match *c {
        CircuitClass::TypeI { cycle } => json!({"type": c.name(), "cycle": cycle}),
        CircuitClass::TypeII { cycles, vertex } => {
            json!({"type": c.name(), "cycles": cycles, "vertex": g.vertex_name(vertex)})
        }
        CircuitClass::TypeIII { cycles, path } => json!({
            "type": c.name(),
            "cycles": cycles,
            "path": edge_names(g, t.block_paths[path].traversal.iter().map(|s| s.0)),
        }),
        CircuitClass::NotCircuit => json!({"type": c.name()}),
    }
}

pub fn parity(p: &ParityReport) -> Value {
    serde_json::to_value(p).expect("parity serializes")
}

pub fn trace(g: &SignedGraph, t: &FraTrace) -> Value {
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| {
            json!({
                "length": s.length,
                "edge": g.edge_name(EdgeId(s.edge)),
                "from_end": s.from_end,
                "revisits": s.revisits,
            })
        })
        .collect();
    json!({"steps": steps, "stop": serde_json::to_value(&t.stop).expect("stop serializes")})
}

/// Summands carry weight one half each; the identity is checked by the
/// caller before this is built.
pub fn half(g: &SignedGraph, h: &HalfDecomposition) -> Value {
    let summands: Vec<Value> = h
        .terms
        .iter()
        .map(|t| {
            json!({
                "edges": edge_names(g, t.edges.iter().copied()),
                "type": t.class.name(),
                "indicator": flow(g, &t.indicator),
            })
        })
        .collect();
    json!({
        "weight": "1/2",
        "summands": summands,
        "doubled_sum": flow(g, &h.doubled_sum),
    })
}
