//! Integer edge functions, the boundary operator, and flow predicates.

use std::ops::{Add, Neg, Sub};

use crate::error::FlowError;
use crate::graph::{EdgeId, SignedGraph, VertexId};
use crate::orientation::{coupling, Orientation};

/// Integer-valued function on the edges of a graph, indexed by edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntFlow(Vec<i64>);

/// Integer-valued function on vertices, indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCharge(pub Vec<i64>);

impl VertexCharge {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn get(&self, v: VertexId) -> i64 {
        self.0[v.0]
    }
}

impl IntFlow {
    pub fn new(values: Vec<i64>) -> Self {
        IntFlow(values)
    }

    pub fn zero(num_edges: usize) -> Self {
        IntFlow(vec![0; num_edges])
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, e: EdgeId) -> i64 {
        self.0[e.0]
    }

    pub fn set(&mut self, e: EdgeId, value: i64) {
        self.0[e.0] = value;
    }

    pub fn add_to(&mut self, e: EdgeId, delta: i64) {
        self.0[e.0] += delta;
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn abs(&self) -> IntFlow {
        IntFlow(self.0.iter().map(|x| x.abs()).collect())
    }

    /// Edges carrying a nonzero value, in edge order.
    pub fn support(&self) -> Vec<EdgeId> {
        support(self)
    }

    /// Edgewise `self <= other`.
    pub fn le(&self, other: &IntFlow) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self(e) * other(e) >= 0` on every edge.
    pub fn sign_compatible(&self, other: &IntFlow) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a * b >= 0)
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// Pointwise product with the coupling of two orientations.
    pub fn coupled(&self, a: &Orientation, b: &Orientation) -> IntFlow {
        IntFlow(self.0.iter().enumerate().map(|(i, &x)| coupling(a, b, EdgeId(i)) as i64 * x).collect())
    }
}

impl Add for &IntFlow {
    type Output = IntFlow;

    fn add(self, rhs: &IntFlow) -> IntFlow {
        IntFlow(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntFlow {
    type Output = IntFlow;

    fn sub(self, rhs: &IntFlow) -> IntFlow {
        IntFlow(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntFlow {
    type Output = IntFlow;

    fn neg(self) -> IntFlow {
        IntFlow(self.0.iter().map(|a| -a).collect())
    }
}

pub fn support(f: &IntFlow) -> Vec<EdgeId> {
    f.0.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| EdgeId(i)).collect()
}

/// Net outflow at each vertex: the sum over incident slots of slot value
/// times edge value. A negative loop contributes twice its value, a positive
/// loop nothing.
pub fn boundary(g: &SignedGraph, f: &IntFlow, eps: &Orientation) -> VertexCharge {
    let mut charge = vec![0i64; g.num_vertices()];
    for (i, edge) in g.edges().iter().enumerate() {
        let x = f.0[i];
        if x == 0 {
            continue;
        }
        let values = eps.edge_values(EdgeId(i)).expect("orientation must cover the flow's edges");
        for end in 0..2 {
            charge[edge.ends[end].0] += values[end] as i64 * x;
        }
    }
    VertexCharge(charge)
}

pub fn is_flow(g: &SignedGraph, f: &IntFlow, eps: &Orientation) -> bool {
    boundary(g, f, eps).is_zero()
}

/// Like [`is_flow`] but names the first non-conservative vertex.
pub fn check_flow(g: &SignedGraph, f: &IntFlow, eps: &Orientation) -> Result<(), FlowError> {
    let charge = boundary(g, f, eps);
    match charge.0.iter().position(|&c| c != 0) {
        None => Ok(()),
        Some(v) => Err(FlowError::NotAFlow { vertex: g.vertex_name(VertexId(v)).to_string(), charge: charge.0[v] }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SignedGraph;
    use crate::orientation::derived_orientation;
    use proptest::prelude::*;

    fn triangle() -> SignedGraph {
        SignedGraph::from_literal(&["a", "b", "c"], &[("x", "a", "b", 1), ("y", "b", "c", 1), ("z", "c", "a", 1)])
            .unwrap()
    }

    #[test]
    fn cyclic_triangle_circulation() {
        let g = triangle();
        let eps = Orientation::canonical(&g);
        assert!(boundary(&g, &IntFlow::new(vec![1, 1, 1]), &eps).is_zero());
    }

    #[test]
    fn negative_loop_counts_twice() {
        let g = SignedGraph::from_literal(&["v"], &[("a", "v", "v", -1)]).unwrap();
        let eps = Orientation::from_values(&g, &[[1, 1]]).unwrap();
        assert_eq!(boundary(&g, &IntFlow::new(vec![3]), &eps).0, vec![6]);
        assert!(!is_flow(&g, &IntFlow::new(vec![1]), &eps));
    }

    #[test]
    fn positive_loop_contributes_nothing() {
        let g = SignedGraph::from_literal(&["v"], &[("a", "v", "v", 1)]).unwrap();
        let eps = Orientation::canonical(&g);
        for x in -3..=3 {
            assert_eq!(boundary(&g, &IntFlow::new(vec![x]), &eps).0, vec![0]);
        }
    }

    #[test]
    fn opposing_negative_loops_balance() {
        let g = SignedGraph::from_literal(&["v"], &[("a", "v", "v", -1), ("b", "v", "v", -1)]).unwrap();
        let eps = Orientation::from_values(&g, &[[1, 1], [-1, -1]]).unwrap();
        assert!(is_flow(&g, &IntFlow::new(vec![1, 1]), &eps));
        assert!(is_flow(&g, &IntFlow::zero(2), &eps));
    }

    #[test]
    fn support_is_exact_nonzero_set() {
        assert!(IntFlow::zero(3).support().is_empty());
        assert_eq!(IntFlow::new(vec![1, 0, -2]).support(), vec![EdgeId(0), EdgeId(2)]);
        assert_eq!(IntFlow::new(vec![1, 1, 1]).support().len(), 3);
    }

    #[test]
    fn check_flow_names_vertex() {
        let g = triangle();
        let eps = Orientation::canonical(&g);
        let err = check_flow(&g, &IntFlow::new(vec![1, 0, 0]), &eps).unwrap_err();
        assert_eq!(err, FlowError::NotAFlow { vertex: "a".into(), charge: 1 });
    }

    fn mixed_graph() -> SignedGraph {
        SignedGraph::from_literal(
            &["u", "v", "w"],
            &[
                ("a", "u", "v", 1),
                ("b", "v", "w", -1),
                ("c", "w", "w", -1),
                ("d", "u", "u", 1),
                ("e", "u", "w", 1),
                ("f", "v", "v", -1),
            ],
        )
        .unwrap()
    }

    proptest! {
        #[test]
        fn boundary_is_linear(a in proptest::collection::vec(-5i64..=5, 6), b in proptest::collection::vec(-5i64..=5, 6)) {
            let g = mixed_graph();
            let eps = Orientation::canonical(&g);
            let (fa, fb) = (IntFlow::new(a), IntFlow::new(b));
            let sum = boundary(&g, &(&fa + &fb), &eps);
            let parts: Vec<i64> = boundary(&g, &fa, &eps).0.iter().zip(boundary(&g, &fb, &eps).0).map(|(x, y)| x + y).collect();
            prop_assert_eq!(sum.0, parts);
        }

        #[test]
        fn derived_orientation_identity(values in proptest::collection::vec(-5i64..=5, 6)) {
            let g = mixed_graph();
            let eps = Orientation::canonical(&g);
            let f = IntFlow::new(values);
            let eps_f = derived_orientation(&f, &eps);
            prop_assert!(eps_f.satisfies_slot_law(&g));
            for e in g.edge_ids() {
                prop_assert_eq!(coupling(&eps, &eps_f, e) as i64 * f.get(e), f.get(e).abs());
            }
            prop_assert_eq!(is_flow(&g, &f, &eps), is_flow(&g, &f.abs(), &eps_f));
        }

        #[test]
        fn incidence_coefficients(x in -4i64..=4) {
            // non-loop: eps(v,e) f(e); negative loop: 2 eps(v,e) f(e); positive loop: 0
            let g = mixed_graph();
            let eps = Orientation::canonical(&g);
            for e in g.edge_ids() {
                let mut f = IntFlow::zero(g.num_edges());
                f.set(e, x);
                let charge = boundary(&g, &f, &eps);
                let edge = g.edge(e);
                let vals = eps.edge_values(e).unwrap();
                for v in g.vertex_ids() {
                    let m = if edge.is_loop() {
                        if edge.ends[0] == v && !edge.sign.is_positive() { 2 * vals[0] as i64 } else { 0 }
                    } else if edge.ends[0] == v {
                        vals[0] as i64
                    } else if edge.ends[1] == v {
                        vals[1] as i64
                    } else {
                        0
                    };
                    prop_assert_eq!(charge.get(v), m * x);
                }
            }
        }
    }
}
