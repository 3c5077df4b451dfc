//! JSON instance files and serialized walks.
//!
//! ```json
//! {
//!   "vertices": ["u", "v"],
//!   "edges": [
//!     {"id": "a", "ends": ["u", "u"], "sign": -1},
//!     {"id": "p", "ends": ["u", "v"], "sign": 1},
//!     {"id": "b", "ends": ["v", "v"], "sign": -1}
//!   ],
//!   "orientation": {"a": [-1, -1], "p": [1, -1], "b": [1, 1]},
//!   "flow": {"a": 1, "p": 2, "b": 1}
//! }
//! ```
//!
//! `orientation` is optional and, when present, must cover every edge with
//! `s0 * s1 = -sign`. Without it every edge gets `+1` on end 0. `flow` is
//! optional; edges it omits carry 0.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{GraphError, OrientationError};
use crate::flow::IntFlow;
use crate::graph::{EdgeSpec, SignedGraph};
use crate::orientation::Orientation;
use crate::walk::DirectedWalk;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<BTreeMap<String, [i64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flow: Option<BTreeMap<String, i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid graph: {}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
    Graph(Vec<GraphError>),
    #[error("invalid orientation: {0}")]
    Orientation(#[from] OrientationError),
    #[error("flow references unknown edge `{0}`")]
    UnknownFlowEdge(String),
}

/// A parsed and validated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: SignedGraph,
    pub orientation: Orientation,
    pub flow: Option<IntFlow>,
}

pub fn parse_document(text: &str) -> Result<GraphDocument, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line").next().unwrap_or_default().to_string(),
    })
}

pub fn build_instance(doc: GraphDocument) -> Result<Instance, InputError> {
    let graph = SignedGraph::new(doc.vertices, doc.edges).map_err(InputError::Graph)?;
    let orientation = match doc.orientation {
        None => Orientation::canonical(&graph),
        Some(map) => {
            if let Some(name) = map.keys().find(|k| graph.edge_by_name(k).is_none()) {
                return Err(OrientationError::UnknownEdge(name.clone()).into());
            }
            let values = graph
                .edge_ids()
                .map(|e| {
                    map.get(graph.edge_name(e))
                        .copied()
                        .ok_or_else(|| OrientationError::MissingEdge(graph.edge_name(e).to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Orientation::from_values(&graph, &values)?
        }
    };
    let flow = match doc.flow {
        None => None,
        Some(map) => {
            let mut f = IntFlow::zero(graph.num_edges());
            for (name, &value) in &map {
                let e = graph.edge_by_name(name).ok_or_else(|| InputError::UnknownFlowEdge(name.clone()))?;
                f.set(e, value);
            }
            Some(f)
        }
    };
    Ok(Instance { graph, orientation, flow })
}

pub fn parse_instance(text: &str) -> Result<Instance, InputError> {
    build_instance(parse_document(text)?)
}

/// Document for a graph with optional orientation and flow, keyed by edge id.
pub fn document_of(g: &SignedGraph, eps: Option<&Orientation>, f: Option<&IntFlow>) -> GraphDocument {
    GraphDocument {
        vertices: g.vertex_names().to_vec(),
        edges: g.edge_specs(),
        orientation: eps.map(|eps| {
            g.edge_ids()
                .filter_map(|e| eps.edge_values(e).map(|v| (g.edge_name(e).to_string(), [v[0] as i64, v[1] as i64])))
                .collect()
        }),
        flow: f.map(|f| g.edge_ids().map(|e| (g.edge_name(e).to_string(), f.get(e))).collect()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub edge: String,
    pub from_end: u8,
    pub dir_from: i8,
    pub dir_to: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkRecord {
    pub start: String,
    pub steps: Vec<StepRecord>,
}

pub fn walk_record(g: &SignedGraph, w: &DirectedWalk) -> WalkRecord {
    WalkRecord {
        start: g.vertex_name(w.start).to_string(),
        steps: w
            .steps
            .iter()
            .map(|s| StepRecord {
                edge: g.edge_name(s.edge).to_string(),
                from_end: s.from_end,
                dir_from: s.dir_from,
                dir_to: s.dir_to,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const G3: &str = r#"{
        "vertices": ["u", "v"],
        "edges": [
            {"id": "a", "ends": ["u", "u"], "sign": -1},
            {"id": "p", "ends": ["u", "v"], "sign": 1},
            {"id": "b", "ends": ["v", "v"], "sign": -1}
        ],
        "orientation": {"a": [-1, -1], "p": [1, -1], "b": [1, 1]},
        "flow": {"a": 1, "p": 2, "b": 1}
    }"#;

    #[test]
    fn parses_a_full_instance() {
        let inst = parse_instance(G3).unwrap();
        assert_eq!(inst.graph.num_edges(), 3);
        assert_eq!(inst.flow.as_ref().unwrap().values(), &[1, 2, 1]);
        assert!(crate::flow::is_flow(&inst.graph, inst.flow.as_ref().unwrap(), &inst.orientation));
    }

    #[test]
    fn defaults_to_canonical_orientation() {
        let text = r#"{"vertices": ["v"], "edges": [{"id": "a", "ends": ["v", "v"], "sign": 1}]}"#;
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.orientation, Orientation::canonical(&inst.graph));
        assert!(inst.flow.is_none());
    }

    #[test]
    fn rejects_slot_law_violation_naming_the_edge() {
        let bad = G3.replace(r#""p": [1, -1]"#, r#""p": [1, 1]"#);
        let err = parse_instance(&bad).unwrap_err();
        assert!(matches!(&err, InputError::Orientation(OrientationError::SlotProduct { edge, .. }) if edge == "p"));
    }

    #[test]
    fn reports_line_of_syntax_errors() {
        let bad = G3.replace(r#""sign": 1}"#, r#""sign": +1}"#);
        match parse_instance(&bad).unwrap_err() {
            InputError::Parse { line, .. } => assert_eq!(line, 5),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn rejects_unknown_fields_and_edges() {
        let extra = G3.replace(r#""vertices""#, r#""weights": [], "vertices""#);
        assert!(matches!(parse_instance(&extra), Err(InputError::Parse { .. })));
        let unknown = G3.replace(r#""flow": {"a": 1"#, r#""flow": {"z": 1"#);
        assert_eq!(parse_instance(&unknown).unwrap_err(), InputError::UnknownFlowEdge("z".into()));
        let missing = G3.replace(r#""a": [-1, -1], "#, "");
        assert!(matches!(parse_instance(&missing), Err(InputError::Orientation(OrientationError::MissingEdge(_)))));
        let dangling = G3.replace(r#"["v", "v"]"#, r#"["v", "w"]"#);
        assert!(matches!(parse_instance(&dangling), Err(InputError::Graph(_))));
    }

    #[test]
    fn documents_round_trip() {
        let g = fixtures::g5();
        let eps = Orientation::canonical(&g);
        let f = IntFlow::new(vec![1; 6]);
        let doc = document_of(&g, Some(&eps), Some(&f));
        let text = serde_json::to_string(&doc).unwrap();
        let inst = parse_instance(&text).unwrap();
        assert_eq!(inst.graph, g);
        assert_eq!(inst.orientation, eps);
        assert_eq!(inst.flow, Some(f));
    }
}
