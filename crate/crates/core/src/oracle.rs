//! Brute-force ground truth for small instances.
//!
//! Nothing here calls into the structural recognizers except where an
//! enumeration needs to name what it found. Flow searches walk a box of
//! integer vectors edge by edge and cut a branch as soon as some vertex can
//! no longer be balanced by the edges still unassigned.

use crate::blocks::{blocks, cut_points, vertices_of};
use crate::cycletree::{detect_eulerian_cycle_tree, EulerianCycleTree};
use crate::error::OracleError;
use crate::flow::{is_flow, IntFlow};
use crate::graph::{EdgeId, SignedGraph, Slot, VertexId};
use crate::orientation::Orientation;
use crate::walk::{DirectedWalk, WalkStep};

pub const MAX_EDGES: usize = 10;
pub const MAX_FLOW_VALUE: i64 = 6;
pub const MAX_WALK_LENGTH: usize = 12;
pub const MAX_DIRECTION_EDGES: usize = 16;

fn guard(what: &'static str, actual: usize, limit: usize) -> Result<(), OracleError> {
    if actual > limit {
        Err(OracleError::SizeGuard { what, actual, limit })
    } else {
        Ok(())
    }
}

/// All flows with `|f(e)| <= bound` under a fixed orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowBox {
    pub bound: i64,
    pub flows: Vec<IntFlow>,
}

impl FlowBox {
    pub fn nontrivial(&self) -> impl Iterator<Item = &IntFlow> {
        self.flows.iter().filter(|f| !f.is_zero())
    }
}

/// Depth-first search over integer vectors with `ranges[e].0 <= x_e <=
/// ranges[e].1` whose boundary vanishes. `visit` returns `true` to stop.
struct BoxSearch<'a> {
    g: &'a SignedGraph,
    ranges: Vec<(i64, i64)>,
    /// Net coefficient of edge `e` at each of its end vertices.
    coeffs: Vec<Vec<(usize, i64)>>,
    /// `reach[k][v]`: largest |charge| edges `k..` can still change at `v`.
    reach: Vec<Vec<i64>>,
}

impl<'a> BoxSearch<'a> {
    fn new(g: &'a SignedGraph, eps: &Orientation, ranges: Vec<(i64, i64)>) -> Self {
        let m = g.num_edges();
        let coeffs: Vec<Vec<(usize, i64)>> = (0..m)
            .map(|i| {
                let e = EdgeId(i);
                let ends = g.edge(e).ends;
                let vals = eps.edge_values(e).expect("orientation covers the graph");
                if ends[0] == ends[1] {
                    vec![(ends[0].0, (vals[0] + vals[1]) as i64)]
                } else {
                    vec![(ends[0].0, vals[0] as i64), (ends[1].0, vals[1] as i64)]
                }
            })
            .collect();
        let mut reach = vec![vec![0i64; g.num_vertices()]; m + 1];
        for k in (0..m).rev() {
            reach[k] = reach[k + 1].clone();
            let span = ranges[k].0.abs().max(ranges[k].1.abs());
            for &(v, c) in &coeffs[k] {
                reach[k][v] += c.abs() * span;
            }
        }
        BoxSearch { g, ranges, coeffs, reach }
    }

    fn run(&self, visit: &mut dyn FnMut(&[i64]) -> bool) {
        let mut x = vec![0i64; self.ranges.len()];
        let mut charge = vec![0i64; self.g.num_vertices()];
        self.go(0, &mut x, &mut charge, visit);
    }

    fn go(&self, k: usize, x: &mut Vec<i64>, charge: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64]) -> bool) -> bool {
        if charge.iter().zip(&self.reach[k]).any(|(c, r)| c.abs() > *r) {
            return false;
        }
        if k == x.len() {
            return visit(x);
        }
        let (lo, hi) = self.ranges[k];
        for value in lo..=hi {
            x[k] = value;
            for &(v, c) in &self.coeffs[k] {
                charge[v] += c * value;
            }
            let stop = self.go(k + 1, x, charge, visit);
            for &(v, c) in &self.coeffs[k] {
                charge[v] -= c * value;
            }
            if stop {
                return true;
            }
        }
        x[k] = 0;
        false
    }
}

/// Every integer flow with `|f(e)| <= bound`, in lexicographic order.
pub fn enumerate_flows(g: &SignedGraph, eps: &Orientation, bound: i64) -> Result<FlowBox, OracleError> {
    guard("edge count", g.num_edges(), MAX_EDGES)?;
    guard("flow bound", bound.max(0) as usize, MAX_FLOW_VALUE as usize)?;
    let bound = bound.max(0);
    let search = BoxSearch::new(g, eps, vec![(-bound, bound); g.num_edges()]);
    let mut flows = Vec::new();
    search.run(&mut |x| {
        flows.push(IntFlow::new(x.to_vec()));
        false
    });
    Ok(FlowBox { bound, flows })
}

/// A nontrivial flow `f1 != f` with `0 <= f1(e)/f(e) <= 1` edgewise, if one
/// exists. Then `f = f1 + (f - f1)` splits `f` into two sign-compatible
/// nontrivial flows.
pub fn find_split(g: &SignedGraph, f: &IntFlow, eps: &Orientation) -> Result<Option<IntFlow>, OracleError> {
    guard("edge count", g.num_edges(), MAX_EDGES)?;
    guard("largest flow value", f.max_abs() as usize, MAX_FLOW_VALUE as usize)?;
    let ranges: Vec<(i64, i64)> = f.values().iter().map(|&x| if x >= 0 { (0, x) } else { (x, 0) }).collect();
    let search = BoxSearch::new(g, eps, ranges);
    let mut found = None;
    search.run(&mut |x| {
        if x.iter().any(|&v| v != 0) && x != f.values() {
            found = Some(IntFlow::new(x.to_vec()));
            true
        } else {
            false
        }
    });
    Ok(found)
}

/// `true` iff the nontrivial flow `f` admits no split into two nontrivial
/// flows of the same sign on every edge.
pub fn brute_force_indecomposable(g: &SignedGraph, f: &IntFlow, eps: &Orientation) -> Result<bool, OracleError> {
    if f.is_zero() || !is_flow(g, f, eps) {
        return Ok(false);
    }
    Ok(find_split(g, f, eps)?.is_none())
}

/// Searches for a closed directed walk using each edge exactly
/// `counts[e]` times and giving repeated traversals identical slot values.
/// Where `fixed[e]` is set, every traversal of `e` must carry those values.
fn eulerian_walk_with_counts(
    g: &SignedGraph,
    counts: &[usize],
    fixed: &[Option<[i8; 2]>],
) -> Option<DirectedWalk> {
    struct Search<'a> {
        g: &'a SignedGraph,
        left: Vec<usize>,
        fixed: Vec<Option<[i8; 2]>>,
        steps: Vec<WalkStep>,
        total: usize,
        start: VertexId,
    }
    impl Search<'_> {
        fn go(&mut self, at: VertexId, next_from: i8) -> bool {
            if self.steps.len() == self.total {
                return at == self.start && self.steps[0].dir_from + self.steps.last().unwrap().dir_to == 0;
            }
            for &slot in self.g.slots_at(at) {
                let e = slot.edge;
                if self.left[e.0] == 0 {
                    continue;
                }
                let dir_to = -self.g.sign(e).value() * next_from;
                let step = WalkStep { edge: e, from_end: slot.end, dir_from: next_from, dir_to };
                let values = step.slot_values();
                let was = self.fixed[e.0];
                if was.is_some_and(|v| v != values) {
                    continue;
                }
                self.fixed[e.0] = Some(values);
                self.left[e.0] -= 1;
                self.steps.push(step);
                if self.go(self.g.slot_vertex(slot.other()), -dir_to) {
                    return true;
                }
                self.steps.pop();
                self.left[e.0] += 1;
                self.fixed[e.0] = was;
            }
            false
        }
    }
    let total: usize = counts.iter().sum();
    let first = counts.iter().position(|&c| c > 0)?;
    // rotate so the walk starts on its smallest edge; with no fixed values
    // the global sign is free, so start at +1
    for end in 0..2u8 {
        let slot = Slot::new(EdgeId(first), end);
        let start = g.slot_vertex(slot);
        let dir_from = fixed[first].map_or(1, |v| v[end as usize]);
        let dir_to = -g.sign(EdgeId(first)).value() * dir_from;
        let step = WalkStep { edge: EdgeId(first), from_end: end, dir_from, dir_to };
        let mut s = Search { g, left: counts.to_vec(), fixed: fixed.to_vec(), steps: Vec::new(), total, start };
        s.fixed[first] = Some(step.slot_values());
        s.left[first] -= 1;
        s.steps.push(step);
        if s.go(g.slot_vertex(slot.other()), -dir_to) {
            return Some(DirectedWalk { start, steps: s.steps });
        }
    }
    None
}

/// `true` iff no directed Eulerian walk is properly contained in the
/// Eulerian walk `w`, comparing traversals as (edge, slot values) pairs.
/// Every sub-multiset is tried.
pub fn brute_force_minimal_walk(g: &SignedGraph, w: &DirectedWalk) -> Result<bool, OracleError> {
    guard("walk length", w.len(), MAX_WALK_LENGTH)?;
    let full = w.edge_multiplicity(g.num_edges());
    let mut fixed = vec![None; g.num_edges()];
    for s in &w.steps {
        fixed[s.edge.0] = Some(s.slot_values());
    }
    let mut counts = vec![0usize; full.len()];
    loop {
        // advance the mixed-radix counter; `full` itself is the last value
        let mut i = 0;
        while i < full.len() && counts[i] == full[i] {
            counts[i] = 0;
            i += 1;
        }
        if i == full.len() {
            return Ok(true);
        }
        counts[i] += 1;
        if counts == full {
            return Ok(true);
        }
        if eulerian_walk_with_counts(g, &counts, &fixed).is_some() {
            return Ok(false);
        }
    }
}

/// Some Eulerian walk on exactly this edge multiset, in any direction.
pub fn find_eulerian_walk(g: &SignedGraph, counts: &[usize]) -> Result<Option<DirectedWalk>, OracleError> {
    guard("walk length", counts.iter().sum(), MAX_WALK_LENGTH)?;
    Ok(eulerian_walk_with_counts(g, counts, &vec![None; g.num_edges()]))
}

/// Every nonempty edge subset that forms an Eulerian cycle-tree, in order of
/// the subset's bitmask.
pub fn enumerate_eulerian_cycle_trees(g: &SignedGraph) -> Result<Vec<EulerianCycleTree>, OracleError> {
    guard("edge count", g.num_edges(), MAX_EDGES)?;
    let m = g.num_edges();
    Ok((1u32..1 << m)
        .filter_map(|mask| {
            let edges: Vec<EdgeId> = (0..m).filter(|i| mask >> i & 1 == 1).map(EdgeId).collect();
            detect_eulerian_cycle_tree(g, &edges)
        })
        .collect())
}

/// `true` iff some tree in `trees` has an edge set properly inside `t`'s.
pub fn properly_contains_member(t: &EulerianCycleTree, trees: &[EulerianCycleTree]) -> bool {
    trees.iter().any(|s| s.edges.len() < t.edges.len() && s.edges.iter().all(|e| t.edges.binary_search(e).is_ok()))
}

/// Every orientation of `edges` that meets the definition of a direction:
/// no vertex is a sink or a source, and every cycle block has a sink or a
/// source at each of its cut-points. Blocks and cut-points come straight
/// from the biconnected decomposition of the edge set.
pub fn brute_force_directions(g: &SignedGraph, edges: &[EdgeId]) -> Result<Vec<Orientation>, OracleError> {
    guard("edge count", edges.len(), MAX_DIRECTION_EDGES)?;
    let cuts = cut_points(g, edges);
    let cycle_blocks: Vec<Vec<EdgeId>> =
        blocks(g, edges).into_iter().filter(|b| b.is_cycle(g)).map(|b| b.edges).collect();
    let vertices = vertices_of(g, edges);
    let mut out = Vec::new();
    for mask in 0u32..1 << edges.len() {
        let mut eps = Orientation::empty(g.num_edges());
        for (i, &e) in edges.iter().enumerate() {
            let s: i8 = if mask >> i & 1 == 1 { -1 } else { 1 };
            eps.set_edge(e, [s, -g.sign(e).value() * s]);
        }
        let values_at = |v: VertexId, within: &[EdgeId]| -> Vec<i8> {
            g.slots_at(v).iter().filter(|s| within.contains(&s.edge)).map(|&s| eps.at(s)).collect()
        };
        let uniform = |vals: &[i8]| vals.iter().all(|&x| x == vals[0]);
        if vertices.iter().any(|&v| uniform(&values_at(v, edges))) {
            continue;
        }
        let cut_ok = cycle_blocks.iter().all(|b| {
            vertices_of(g, b).into_iter().filter(|v| cuts.contains(v)).all(|v| uniform(&values_at(v, b)))
        });
        if cut_ok {
            out.push(eps);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{g2, g3, g5, triangle, unbalanced_triangle};
    use crate::graph::SignedGraph;

    fn all(g: &SignedGraph) -> Vec<EdgeId> {
        g.edge_ids().collect()
    }

    #[test]
    fn flows_on_loops() {
        let neg = SignedGraph::from_literal(&["v"], &[("a", "v", "v", -1)]).unwrap();
        let eps = Orientation::canonical(&neg);
        assert_eq!(enumerate_flows(&neg, &eps, 2).unwrap().flows, vec![IntFlow::zero(1)]);
        let pos = SignedGraph::from_literal(&["v"], &[("a", "v", "v", 1)]).unwrap();
        let eps = Orientation::canonical(&pos);
        assert_eq!(enumerate_flows(&pos, &eps, 1).unwrap().flows.len(), 3);
    }

    #[test]
    fn triangle_box_matches_full_product() {
        let g = triangle();
        let eps = Orientation::canonical(&g);
        let found = enumerate_flows(&g, &eps, 1).unwrap().flows;
        let mut expected = Vec::new();
        for a in -1..=1 {
            for b in -1..=1 {
                for c in -1..=1 {
                    let f = IntFlow::new(vec![a, b, c]);
                    if is_flow(&g, &f, &eps) {
                        expected.push(f);
                    }
                }
            }
        }
        assert_eq!(found, expected);
        assert_eq!(found.len(), 3);
    }

    #[test]
    fn flow_box_is_symmetric() {
        let g = g5();
        let eps = Orientation::canonical(&g);
        let fb = enumerate_flows(&g, &eps, 2).unwrap();
        for f in &fb.flows {
            assert!(is_flow(&g, f, &eps));
            assert!(fb.flows.contains(&-f));
        }
    }

    #[test]
    fn guards() {
        let edges: Vec<(usize, usize, crate::graph::Sign)> =
            (0..11).map(|i| (0, (i % 2) as usize, crate::graph::Sign::Positive)).collect();
        let g = SignedGraph::from_indexed(2, &edges);
        let eps = Orientation::canonical(&g);
        assert!(matches!(enumerate_flows(&g, &eps, 1), Err(OracleError::SizeGuard { .. })));
        assert!(enumerate_eulerian_cycle_trees(&g).is_err());
        let g = triangle();
        let eps = Orientation::canonical(&g);
        let big = IntFlow::new(vec![7, 7, 7]);
        assert!(find_split(&g, &big, &eps).is_err());
    }

    #[test]
    fn indecomposability_verdicts() {
        let g = triangle();
        let t = detect_eulerian_cycle_tree(&g, &all(&g)).unwrap();
        let eps = t.find_direction(&g);
        assert!(brute_force_indecomposable(&g, &IntFlow::new(vec![1, 1, 1]), &eps).unwrap());
        assert!(!brute_force_indecomposable(&g, &IntFlow::new(vec![2, 2, 2]), &eps).unwrap());

        let g = g2();
        let eps = Orientation::from_values(&g, &[[1, 1], [-1, -1]]).unwrap();
        assert!(brute_force_indecomposable(&g, &IntFlow::new(vec![1, 1]), &eps).unwrap());
        let split = find_split(&g, &IntFlow::new(vec![2, 2]), &eps).unwrap();
        assert_eq!(split, Some(IntFlow::new(vec![1, 1])));

        let g = g3();
        let eps = detect_eulerian_cycle_tree(&g, &all(&g)).unwrap().find_direction(&g);
        let f = IntFlow::new(vec![1, 2, 1]);
        assert!(brute_force_indecomposable(&g, &f, &eps).unwrap());
        assert!(brute_force_indecomposable(&g, &-&f, &eps).unwrap());
        assert_eq!(find_split(&g, &IntFlow::new(vec![2, 4, 2]), &eps).unwrap(), Some(f));

        let g = g5();
        let eps = detect_eulerian_cycle_tree(&g, &all(&g)).unwrap().find_direction(&g);
        assert!(brute_force_indecomposable(&g, &IntFlow::new(vec![1; 6]), &eps).unwrap());
    }

    #[test]
    fn minimal_walks() {
        let g = triangle();
        let once = DirectedWalk::from_traversals(&g, &[(EdgeId(0), 0), (EdgeId(1), 0), (EdgeId(2), 0)], 1);
        assert!(brute_force_minimal_walk(&g, &once).unwrap());
        let twice = DirectedWalk { start: once.start, steps: [once.steps.clone(), once.steps.clone()].concat() };
        assert!(twice.is_eulerian(&g));
        assert!(!brute_force_minimal_walk(&g, &twice).unwrap());

        let g = g3();
        let t = detect_eulerian_cycle_tree(&g, &all(&g)).unwrap();
        let w = t.canonical_closed_walk(&g, &t.find_direction(&g));
        assert!(brute_force_minimal_walk(&g, &w).unwrap());
        let g = g5();
        let t = detect_eulerian_cycle_tree(&g, &all(&g)).unwrap();
        let w = t.canonical_closed_walk(&g, &t.find_direction(&g));
        assert!(brute_force_minimal_walk(&g, &w).unwrap());
        // the square is an Eulerian walk inside the same edges, but only
        // against the walk's direction
        let square = [0, 1, 1, 0, 1, 1];
        let found = find_eulerian_walk(&g, &square).unwrap().unwrap();
        assert!(found.is_eulerian(&g));
        assert!(found.steps.iter().any(|s| w.direction(6).edge_values(s.edge) != Some(s.slot_values())));
    }

    #[test]
    fn eulerian_cycle_tree_census() {
        let g = triangle();
        assert_eq!(enumerate_eulerian_cycle_trees(&g).unwrap().len(), 1);
        assert!(enumerate_eulerian_cycle_trees(&unbalanced_triangle()).unwrap().is_empty());
        let g = g5();
        let trees = enumerate_eulerian_cycle_trees(&g).unwrap();
        let sets: Vec<Vec<&str>> =
            trees.iter().map(|t| t.edges.iter().map(|&e| g.edge_name(e)).collect()).collect();
        // the square, both dumbbells, and the whole graph
        assert_eq!(sets, [
            vec!["a", "e12", "e23", "b"],
            vec!["e12", "e23", "e34", "e41"],
            vec!["a", "b", "e34", "e41"],
            vec!["a", "e12", "e23", "b", "e34", "e41"],
        ]);
        assert!(properly_contains_member(&trees[3], &trees));
        assert!(trees[..3].iter().all(|t| !properly_contains_member(t, &trees)));
        let classes: Vec<&str> = trees.iter().map(|t| t.classify(&g).name()).collect();
        assert_eq!(classes, ["TypeIII", "TypeI", "TypeIII", "NotCircuit"]);
    }

    #[test]
    fn g3_has_no_smaller_eulerian_subtree() {
        let g = g3();
        let trees = enumerate_eulerian_cycle_trees(&g).unwrap();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].edges.len(), 3);
    }

    #[test]
    fn direction_counts() {
        let g = g5();
        let dirs = brute_force_directions(&g, &all(&g)).unwrap();
        assert_eq!(dirs.len(), 2);
        assert_eq!(dirs[0], dirs[1].negated());
        assert!(brute_force_directions(&unbalanced_triangle(), &[EdgeId(0), EdgeId(1), EdgeId(2)])
            .unwrap()
            .is_empty());
    }
}
