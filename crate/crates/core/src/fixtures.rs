//! Small named graphs used throughout the tests and the CLI examples.

use crate::graph::SignedGraph;

/// Balanced triangle `x = ab`, `y = bc`, `z = ca`.
pub fn triangle() -> SignedGraph {
    SignedGraph::from_literal(&["a", "b", "c"], &[("x", "a", "b", 1), ("y", "b", "c", 1), ("z", "c", "a", 1)])
        .expect("fixture is well formed")
}

/// Triangle with one negative edge.
pub fn unbalanced_triangle() -> SignedGraph {
    SignedGraph::from_literal(&["a", "b", "c"], &[("x", "a", "b", -1), ("y", "b", "c", 1), ("z", "c", "a", 1)])
        .expect("fixture is well formed")
}

/// Two negative loops `a`, `b` at a single vertex `v`.
pub fn g2() -> SignedGraph {
    SignedGraph::from_literal(&["v"], &[("a", "v", "v", -1), ("b", "v", "v", -1)]).expect("fixture is well formed")
}

/// Negative loop `a` at `u`, positive edge `p = uv`, negative loop `b` at `v`.
pub fn g3() -> SignedGraph {
    SignedGraph::from_literal(&["u", "v"], &[("a", "u", "u", -1), ("p", "u", "v", 1), ("b", "v", "v", -1)])
        .expect("fixture is well formed")
}

/// Positive square `v1 v2 v3 v4` with negative loops `a` at `v1` and `b` at `v3`.
pub fn g5() -> SignedGraph {
    SignedGraph::from_literal(
        &["v1", "v2", "v3", "v4"],
        &[
            ("a", "v1", "v1", -1),
            ("e12", "v1", "v2", 1),
            ("e23", "v2", "v3", 1),
            ("b", "v3", "v3", -1),
            ("e34", "v3", "v4", 1),
            ("e41", "v4", "v1", 1),
        ],
    )
    .expect("fixture is well formed")
}

/// Two unbalanced triangles joined through a balanced middle triangle by two
/// block paths.
pub fn chain3() -> SignedGraph {
    SignedGraph::from_literal(
        &["a", "b", "c", "d", "e", "f", "g", "h", "i"],
        &[
            ("x1", "a", "b", -1),
            ("x2", "b", "c", 1),
            ("x3", "c", "a", 1),
            ("p1", "c", "d", 1),
            ("y1", "d", "e", 1),
            ("y2", "e", "f", 1),
            ("y3", "f", "d", 1),
            ("p2", "f", "g", 1),
            ("z1", "g", "h", 1),
            ("z2", "h", "i", 1),
            ("z3", "i", "g", -1),
        ],
    )
    .expect("fixture is well formed")
}
