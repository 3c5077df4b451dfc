//! Instance generators: the exhaustive family of small signed multigraphs,
//! random cycle-trees, and random directed walks.
//!
//! Sweep order is fixed: by vertex count, then edge count, then the edge
//! multiset as a sorted list of vertex pairs in lexicographic order, then the
//! sign mask with bit `i` set when edge `i` is negative.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::blocks::is_connected;
use crate::graph::{EdgeId, Sign, SignedGraph, Slot, VertexId};
use crate::orientation::Orientation;
use crate::walk::{DirectedWalk, WalkStep};

/// A generated graph with a stable human-readable id.
#[derive(Clone, Debug)]
pub struct FamilyGraph {
    pub id: String,
    pub graph: SignedGraph,
}

fn graph_id(n: usize, edges: &[(usize, usize, Sign)]) -> String {
    let body: Vec<String> =
        edges.iter().map(|&(a, b, s)| format!("{a}{b}{}", if s.is_positive() { '+' } else { '-' })).collect();
    format!("n{n}:{}", body.join(","))
}

/// Multisets of size `m` drawn from `0..k`, as non-decreasing sequences.
fn multisets(k: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, m: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in from..k {
            cur.push(i);
            go(k, m, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, m, 0, &mut Vec::new(), &mut out);
    out
}

/// All connected signed multigraphs on exactly `1..=max_vertices` labeled
/// vertices with `1..=max_edges` edges, loops and parallel edges included.
pub fn sweep_graphs(max_vertices: usize, max_edges: usize) -> Vec<FamilyGraph> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        for m in 1..=max_edges {
            for choice in multisets(pairs.len(), m) {
                let ends: Vec<(usize, usize)> = choice.iter().map(|&i| pairs[i]).collect();
                let probe = SignedGraph::from_indexed(n, &ends.iter().map(|&(a, b)| (a, b, Sign::Positive)).collect::<Vec<_>>());
                let all: Vec<EdgeId> = probe.edge_ids().collect();
                let touched = (0..n).all(|v| ends.iter().any(|&(a, b)| a == v || b == v));
                if !touched || !is_connected(&probe, &all) {
                    continue;
                }
                for mask in 0u32..1 << m {
                    let edges: Vec<(usize, usize, Sign)> = ends
                        .iter()
                        .enumerate()
                        .map(|(i, &(a, b))| (a, b, if mask >> i & 1 == 1 { Sign::Negative } else { Sign::Positive }))
                        .collect();
                    out.push(FamilyGraph { id: graph_id(n, &edges), graph: SignedGraph::from_indexed(n, &edges) });
                }
            }
        }
    }
    out
}

/// Random cycle-tree with at most `max_edges` edges. Cycles of length 1 to 3
/// are hung on unused vertices of earlier cycles, either sharing the vertex
/// or through a path of length 1 or 2. Edge order and end order are shuffled.
/// With `eulerian` set, one edge per cycle is re-signed so that the parity
/// condition holds.
pub fn random_cycle_tree<R: Rng>(rng: &mut R, max_edges: usize, eulerian: bool) -> SignedGraph {
    let max_edges = max_edges.max(1);
    let mut next_vertex = 0usize;
    let mut fresh = || {
        next_vertex += 1;
        next_vertex - 1
    };
    let mut edges: Vec<(usize, usize, Sign)> = Vec::new();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut cycle_edges: Vec<Vec<usize>> = Vec::new();
    let mut used: Vec<usize> = Vec::new();
    let random_sign = |rng: &mut R| if rng.gen_bool(0.5) { Sign::Negative } else { Sign::Positive };

    let add_cycle = |rng: &mut R, at: usize, len: usize, edges: &mut Vec<(usize, usize, Sign)>, fresh: &mut dyn FnMut() -> usize| {
        let mut vs = vec![at];
        for _ in 1..len {
            vs.push(fresh());
        }
        let mut ids = Vec::new();
        for i in 0..len {
            ids.push(edges.len());
            edges.push((vs[i], vs[(i + 1) % len], random_sign(rng)));
        }
        (vs, ids)
    };

    let first_len = rng.gen_range(1..=3.min(max_edges));
    let start = fresh();
    let (vs, ids) = add_cycle(rng, start, first_len, &mut edges, &mut fresh);
    cycles.push(vs);
    cycle_edges.push(ids);
    while edges.len() < max_edges && rng.gen_bool(0.75) {
        let c = rng.gen_range(0..cycles.len());
        let free: Vec<usize> = cycles[c].iter().copied().filter(|v| !used.contains(v)).collect();
        let Some(&v) = free.choose(rng) else { continue };
        let path_len = if rng.gen_bool(0.4) { 0 } else { rng.gen_range(1..=2) };
        let budget = max_edges - edges.len();
        if budget < path_len + 1 {
            break;
        }
        let len = rng.gen_range(1..=3.min(budget - path_len));
        used.push(v);
        let mut at = v;
        for _ in 0..path_len {
            let w = fresh();
            edges.push((at, w, random_sign(rng)));
            at = w;
        }
        used.push(at);
        let (vs, ids) = add_cycle(rng, at, len, &mut edges, &mut fresh);
        cycles.push(vs);
        cycle_edges.push(ids);
    }
    if eulerian {
        for (c, ids) in cycles.iter().zip(&cycle_edges) {
            let intersections = c.iter().filter(|v| used.contains(v)).count();
            let negatives = ids.iter().filter(|&&i| !edges[i].2.is_positive()).count();
            let balanced = negatives % 2 == 0;
            if balanced != (intersections % 2 == 0) {
                let i = ids[rng.gen_range(0..ids.len())];
                edges[i].2 = edges[i].2.flipped();
            }
        }
    }
    edges.shuffle(rng);
    for e in edges.iter_mut() {
        if rng.gen_bool(0.5) {
            *e = (e.1, e.0, e.2);
        }
    }
    SignedGraph::from_indexed(next_vertex, &edges)
}

/// Random signed multigraph with `1..=max_vertices` vertices and
/// `1..=max_edges` edges; not necessarily connected.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> SignedGraph {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(1..=max_edges);
    let edges: Vec<(usize, usize, Sign)> = (0..m)
        .map(|_| {
            let sign = if rng.gen_bool(0.5) { Sign::Negative } else { Sign::Positive };
            (rng.gen_range(0..n), rng.gen_range(0..n), sign)
        })
        .collect();
    SignedGraph::from_indexed(n, &edges)
}

/// Random orientation satisfying the slot law.
pub fn random_orientation<R: Rng>(rng: &mut R, g: &SignedGraph) -> Orientation {
    let values: Vec<[i64; 2]> = g
        .edge_ids()
        .map(|e| {
            let s: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
            [s, -(g.sign(e).value() as i64) * s]
        })
        .collect();
    Orientation::from_values(g, &values).expect("slot law holds by construction")
}

fn random_step<R: Rng>(rng: &mut R, g: &SignedGraph, at: VertexId, dir_from: i8) -> Option<WalkStep> {
    let slot: Slot = *g.slots_at(at).choose(rng)?;
    let dir_to = -g.sign(slot.edge).value() * dir_from;
    Some(WalkStep { edge: slot.edge, from_end: slot.end, dir_from, dir_to })
}

/// A random directed walk of `len` steps from a random non-isolated vertex
/// that happens to end where it started, if the attempt gets there.
pub fn random_returning_walk<R: Rng>(rng: &mut R, g: &SignedGraph, len: usize) -> Option<DirectedWalk> {
    let starts: Vec<VertexId> = g.vertex_ids().filter(|&v| !g.slots_at(v).is_empty()).collect();
    let start = *starts.choose(rng)?;
    let mut at = start;
    let mut dir_from: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
    let mut steps = Vec::with_capacity(len);
    for _ in 0..len {
        let step = random_step(rng, g, at, dir_from)?;
        at = g.slot_vertex(step.to_slot());
        dir_from = -step.dir_to;
        steps.push(step);
    }
    (at == start).then_some(DirectedWalk { start, steps })
}

/// A random directed closed walk grown one step at a time, discarding any
/// step that would break midway-back avoidance. Returns `None` if it gets
/// stuck or fails to close within `max_len` steps.
pub fn random_avoided_closed_walk<R: Rng>(rng: &mut R, g: &SignedGraph, max_len: usize) -> Option<DirectedWalk> {
    let starts: Vec<VertexId> = g.vertex_ids().filter(|&v| !g.slots_at(v).is_empty()).collect();
    let start = *starts.choose(rng)?;
    let mut vertices = vec![start];
    let mut steps: Vec<WalkStep> = Vec::new();
    let mut dir_from: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
    while steps.len() < max_len {
        let at = *vertices.last().unwrap();
        let mut options: Vec<Slot> = g.slots_at(at).to_vec();
        options.shuffle(rng);
        let mut advanced = false;
        for slot in options {
            let dir_to = -g.sign(slot.edge).value() * dir_from;
            let step = WalkStep { edge: slot.edge, from_end: slot.end, dir_from, dir_to };
            let to = g.slot_vertex(slot.other());
            let closes = to == start && steps.first().map_or(step.dir_from, |s| s.dir_from) + dir_to == 0;
            // arriving at an earlier vertex fixes the value we arrive with,
            // unless this step ends the walk
            let stop = closes && rng.gen_bool(0.7);
            let ok = stop
                || vertices.iter().enumerate().all(|(a, &u)| {
                    u != to || dir_to == if a < steps.len() { steps[a].dir_from } else { step.dir_from }
                });
            if !ok {
                continue;
            }
            steps.push(step);
            vertices.push(to);
            dir_from = -dir_to;
            advanced = true;
            if stop {
                return Some(DirectedWalk { start, steps });
            }
            break;
        }
        if !advanced {
            return None;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycletree::detect_cycle_tree;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(multisets(10, 5).len(), 2002);
    }

    #[test]
    fn sweep_family_shape() {
        let fam = sweep_graphs(2, 2);
        // n=1: 1 loop (2 signs), 2 loops (4); n=2: the edge 01 (2),
        // then pairs containing 01 with one more edge: 00, 01, 11 (3 * 4)
        assert_eq!(fam.len(), 2 + 4 + 2 + 12);
        assert_eq!(fam[0].id, "n1:00+");
        assert_eq!(fam[1].id, "n1:00-");
        for g in &fam {
            let all: Vec<EdgeId> = g.graph.edge_ids().collect();
            assert!(is_connected(&g.graph, &all));
        }
    }

    #[test]
    fn sweep_is_deterministic() {
        let a: Vec<String> = sweep_graphs(3, 3).into_iter().map(|g| g.id).collect();
        let b: Vec<String> = sweep_graphs(3, 3).into_iter().map(|g| g.id).collect();
        assert_eq!(a, b);
        let mut sorted = a.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), a.len());
    }

    #[test]
    fn random_cycle_trees_are_cycle_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..500 {
            let g = random_cycle_tree(&mut rng, 8, i % 2 == 0);
            assert!(g.num_edges() <= 8);
            let all: Vec<EdgeId> = g.edge_ids().collect();
            let t = detect_cycle_tree(&g, &all).unwrap_or_else(|e| panic!("{e}: {:?}", g.edge_specs()));
            if i % 2 == 0 {
                assert!(t.check_parity().holds);
            }
        }
    }

    #[test]
    fn generated_walks_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut avoided = 0;
        for _ in 0..2000 {
            let g = random_graph(&mut rng, 4, 6);
            let len = rng.gen_range(1..=8);
            if let Some(w) = random_returning_walk(&mut rng, &g, len) {
                assert!(w.validate(&g).is_ok());
            }
            if let Some(w) = random_avoided_closed_walk(&mut rng, &g, 10) {
                assert!(w.validate(&g).is_ok());
                assert!(w.is_closed(&g));
                assert!(w.is_midway_back_avoided(&g));
                avoided += 1;
            }
        }
        assert!(avoided > 100);
    }
}
