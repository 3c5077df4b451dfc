//! Graphviz rendering. Each edge is drawn from end 0 to end 1 with an arrow
//! at both ends: a slot value of `+1` points away from its vertex, `-1`
//! points toward it. Negative edges are dashed, block cycles become
//! clusters and block paths are drawn bold.

use std::fmt::Write;

use crate::cycletree::CycleTree;
use crate::flow::IntFlow;
use crate::graph::{EdgeId, SignedGraph, Slot, VertexId};
use crate::orientation::Orientation;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn arrow(value: Option<i8>) -> &'static str {
    match value {
        Some(1) => "inv",
        Some(_) => "normal",
        None => "none",
    }
}

pub struct DotView<'a> {
    pub name: &'a str,
    pub graph: &'a SignedGraph,
    pub orientation: Option<&'a Orientation>,
    pub tree: Option<&'a CycleTree>,
    /// Appended to edge labels when given.
    pub flow: Option<&'a IntFlow>,
}

impl DotView<'_> {
    fn edge_line(&self, e: EdgeId, bold: bool) -> String {
        let g = self.graph;
        let edge = g.edge(e);
        let mut attrs = vec![];
        let label = match self.flow {
            Some(f) => format!("{}:{}", edge.name, f.get(e)),
            None => edge.name.clone(),
        };
        attrs.push(format!("label={}", quote(&label)));
        attrs.push(format!("style={}", if edge.sign.is_positive() { "solid" } else { "dashed" }));
        if bold {
            attrs.push("penwidth=3".into());
        }
        let values = |end| self.orientation.and_then(|o| o.value(Slot::new(e, end)));
        attrs.push("dir=both".into());
        attrs.push(format!("arrowtail={}", arrow(values(0))));
        attrs.push(format!("arrowhead={}", arrow(values(1))));
        format!(
            "{} -> {} [{}];",
            quote(g.vertex_name(edge.ends[0])),
            quote(g.vertex_name(edge.ends[1])),
            attrs.join(", ")
        )
    }

    pub fn render(&self) -> String {
        let g = self.graph;
        let mut out = String::new();
        writeln!(out, "digraph {} {{", quote(self.name)).unwrap();
        writeln!(out, "  node [shape=circle];").unwrap();
        let mut placed = vec![false; g.num_vertices()];
        let mut drawn = vec![false; g.num_edges()];
        if let Some(t) = self.tree {
            for (i, c) in t.block_cycles.iter().enumerate() {
                writeln!(out, "  subgraph cluster_c{i} {{").unwrap();
                let kind = if c.is_balanced() { "balanced" } else { "unbalanced" };
                writeln!(out, "    label={};", quote(&format!("C{i} {kind}"))).unwrap();
                for &VertexId(v) in &c.vertices {
                    if !placed[v] {
                        placed[v] = true;
                        writeln!(out, "    {};", quote(g.vertex_name(VertexId(v)))).unwrap();
                    }
                }
                for e in c.edges() {
                    drawn[e.0] = true;
                    writeln!(out, "    {}", self.edge_line(e, false)).unwrap();
                }
                writeln!(out, "  }}").unwrap();
            }
            for p in &t.block_paths {
                for e in p.edges() {
                    drawn[e.0] = true;
                    writeln!(out, "  {}", self.edge_line(e, true)).unwrap();
                }
            }
        }
        for v in g.vertex_ids() {
            if !placed[v.0] {
                writeln!(out, "  {};", quote(g.vertex_name(v))).unwrap();
            }
        }
        for e in g.edge_ids() {
            if !drawn[e.0] {
                writeln!(out, "  {}", self.edge_line(e, false)).unwrap();
            }
        }
        writeln!(out, "}}").unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycletree::detect_cycle_tree;
    use crate::fixtures;

    #[test]
    fn renders_clusters_paths_and_arrows() {
        let g = fixtures::g3();
        let all: Vec<EdgeId> = g.edge_ids().collect();
        let t = detect_cycle_tree(&g, &all).unwrap();
        let eps = Orientation::canonical(&g);
        let dot = DotView { name: "g3", graph: &g, orientation: Some(&eps), tree: Some(&t), flow: None }.render();
        assert_eq!(dot.matches("subgraph cluster_").count(), 2);
        assert_eq!(dot.matches("penwidth=3").count(), 1);
        assert_eq!(dot.matches("style=dashed").count(), 2);
        // canonical: +1 on end 0, and on end 1 as well for the negative loops
        assert!(dot.contains(r#""u" -> "u" [label="a", style=dashed, dir=both, arrowtail=inv, arrowhead=inv];"#));
        assert!(dot.contains("arrowtail=inv, arrowhead=normal"));
        assert!(dot.starts_with("digraph \"g3\" {"));
        assert!(dot.ends_with("}\n"));
    }

    #[test]
    fn plain_graph_without_orientation() {
        let g = fixtures::triangle();
        let f = IntFlow::new(vec![1, 2, 3]);
        let dot = DotView { name: "t", graph: &g, orientation: None, tree: None, flow: Some(&f) }.render();
        assert!(dot.contains("arrowtail=none"));
        assert!(dot.contains(r#"label="y:2""#));
        assert!(!dot.contains("cluster"));
    }

    #[test]
    fn quotes_awkward_names() {
        assert_eq!(quote(r#"a"b"#), r#""a\"b""#);
    }
}
