//! Instance checks and the harness that runs them, sequentially or with
//! rayon. Every check is a pure function of its instance, and results come
//! back in instance order whichever mode runs them.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::blocks::cut_points;
use crate::cycletree::{detect_cycle_tree, detect_eulerian_cycle_tree, CircuitClass, CycleTree};
use crate::family::{
    random_avoided_closed_walk, random_cycle_tree, random_graph, random_orientation, random_returning_walk,
    sweep_graphs, FamilyGraph,
};
use crate::flow::{is_flow, IntFlow};
use crate::fra::{decompose_flow, is_indecomposable};
use crate::graph::{EdgeId, SignedGraph};
use crate::oracle::{
    brute_force_directions, brute_force_indecomposable, brute_force_minimal_walk, enumerate_eulerian_cycle_trees,
    enumerate_flows, properly_contains_member, MAX_WALK_LENGTH,
};
use crate::orientation::Orientation;
use crate::walk::DirectedWalk;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExecutionMode {
    Sequential,
    Parallel,
}

impl Default for ExecutionMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecutionMode::Parallel
        } else {
            ExecutionMode::Sequential
        }
    }
}

/// Applies `f` to every item. `Parallel` falls back to sequential when the
/// crate is built without the `parallel` feature.
pub fn run_instances<T, R, F>(items: &[T], mode: ExecutionMode, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecutionMode::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// One row of the verdict table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictRow {
    pub graph: String,
    pub flow: Vec<i64>,
    pub oracle: bool,
    pub fast: bool,
}

/// Everything checked on one sweep graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GraphReport {
    pub graph: String,
    pub rows: Vec<VerdictRow>,
    /// Broken decomposition properties, one message each.
    pub decomposition_violations: Vec<String>,
    pub minimality_checks: usize,
    pub minimality_disagreements: Vec<String>,
    pub symmetry_violations: Vec<String>,
    pub trees: usize,
    pub circuits: usize,
    pub census_violations: Vec<String>,
    /// Guard or invariant errors raised while checking.
    pub errors: Vec<String>,
}

fn template_matches(t: &CycleTree) -> Vec<&'static str> {
    let cycles = &t.block_cycles;
    let mut out = Vec::new();
    if cycles.len() == 1 && t.block_paths.is_empty() && cycles[0].is_balanced() {
        out.push("TypeI");
    }
    if cycles.len() == 2 && cycles.iter().all(|c| !c.is_balanced()) {
        let shared = cycles[0].vertices.iter().filter(|v| cycles[1].contains_vertex(**v)).count();
        if t.block_paths.is_empty() && shared == 1 {
            out.push("TypeII");
        }
        if t.block_paths.len() == 1 && shared == 0 {
            out.push("TypeIII");
        }
    }
    out
}

fn walk_key(w: &DirectedWalk) -> Vec<(usize, u8, i8)> {
    w.steps.iter().map(|s| (s.edge.0, s.from_end, s.dir_from)).collect()
}

/// Runs the verdict comparison, decomposition checks, walk-minimality
/// comparison and circuit census on one graph under its canonical
/// orientation.
pub fn check_graph(fg: &FamilyGraph, bound: i64) -> GraphReport {
    let g = &fg.graph;
    let eps = Orientation::canonical(g);
    let mut rep = GraphReport { graph: fg.id.clone(), ..Default::default() };
    let fbox = match enumerate_flows(g, &eps, bound) {
        Ok(b) => b,
        Err(e) => {
            rep.errors.push(e.to_string());
            return rep;
        }
    };
    let mut minimal_cache: HashMap<Vec<(usize, u8, i8)>, bool> = HashMap::new();
    let mut verdicts: HashMap<Vec<i64>, bool> = HashMap::new();
    for f in fbox.nontrivial() {
        let label = format!("{} f={:?}", fg.id, f.values());
        let oracle = match brute_force_indecomposable(g, f, &eps) {
            Ok(v) => v,
            Err(e) => {
                rep.errors.push(format!("{label}: {e}"));
                continue;
            }
        };
        let fast = match is_indecomposable(g, f, &eps) {
            Ok(t) => t.is_some(),
            Err(e) => {
                rep.errors.push(format!("{label}: {e}"));
                continue;
            }
        };
        verdicts.insert(f.values().to_vec(), oracle);
        rep.rows.push(VerdictRow { graph: fg.id.clone(), flow: f.values().to_vec(), oracle, fast });

        let d = match decompose_flow(g, f, &eps) {
            Ok(d) => d,
            Err(e) => {
                rep.errors.push(format!("{label}: {e}"));
                continue;
            }
        };
        let mut bad = |what: String| rep.decomposition_violations.push(format!("{label}: {what}"));
        if d.sum() != *f {
            bad("terms do not sum to f".into());
        }
        if fast && d.terms.len() != 1 {
            bad(format!("indecomposable flow split into {} terms", d.terms.len()));
        }
        for (i, t) in d.terms.iter().enumerate() {
            let w = &t.walk;
            match w.characteristic_vector(g, &eps) {
                Ok(cv) if cv == t.flow => {}
                _ => bad(format!("term {i} is not the characteristic vector of its walk")),
            }
            if !w.is_closed(g) || w.validate(g).is_err() {
                bad(format!("term {i} walk is not a closed directed walk"));
            }
            if !w.is_midway_back_avoided(g) {
                bad(format!("term {i} walk is not midway-back avoided"));
            }
            let cuts = cut_points(g, &w.support());
            if w.has_triple_vertex(g) || w.double_vertices(g).iter().any(|v| !cuts.contains(v)) {
                bad(format!("term {i} walk repeats a vertex that is not a cut-point"));
            }
            let minimal = w.is_minimal_eulerian(g);
            if !minimal {
                bad(format!("term {i} walk is not a minimal Eulerian walk"));
            }
            if !t.flow.sign_compatible(f) {
                bad(format!("term {i} is not sign-compatible with f"));
            }
            if w.len() <= MAX_WALK_LENGTH {
                let key = walk_key(w);
                let oracle_min = match minimal_cache.get(&key) {
                    Some(&v) => Some(v),
                    None => match brute_force_minimal_walk(g, w) {
                        Ok(v) => {
                            minimal_cache.insert(key, v);
                            Some(v)
                        }
                        Err(e) => {
                            rep.errors.push(format!("{label}: {e}"));
                            None
                        }
                    },
                };
                if let Some(v) = oracle_min {
                    rep.minimality_checks += 1;
                    if v != minimal {
                        rep.minimality_disagreements
                            .push(format!("{label}: term {i} oracle {v}, structural {minimal}"));
                    }
                }
            }
        }
    }
    for (flow, &v) in &verdicts {
        let neg: Vec<i64> = flow.iter().map(|x| -x).collect();
        if verdicts.get(&neg) != Some(&v) {
            rep.symmetry_violations.push(format!("{} f={:?}", fg.id, flow));
        }
    }
    rep.symmetry_violations.sort();

    match enumerate_eulerian_cycle_trees(g) {
        Ok(trees) => {
            rep.trees = trees.len();
            for t in &trees {
                let class = t.classify(g);
                let contains = properly_contains_member(t, &trees);
                let label = format!("{} tree {:?}", fg.id, t.edges.iter().map(|e| e.0).collect::<Vec<_>>());
                if class.is_circuit() == contains {
                    rep.census_violations.push(format!("{label}: {} but contains member = {contains}", class.name()));
                }
                if class.is_circuit() {
                    rep.circuits += 1;
                    let m = template_matches(t.tree());
                    if m != [class.name()] {
                        rep.census_violations.push(format!("{label}: {} matches templates {m:?}", class.name()));
                    }
                }
            }
        }
        Err(e) => rep.errors.push(e.to_string()),
    }
    rep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub bound: i64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { max_vertices: 4, max_edges: 5, bound: 3 }
    }
}

/// Merged results of a family sweep. Lists keep only the offending entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub graphs: usize,
    pub flows: usize,
    pub indecomposable: usize,
    pub disagreements: Vec<VerdictRow>,
    pub decomposition_violations: Vec<String>,
    pub minimality_checks: usize,
    pub minimality_disagreements: Vec<String>,
    pub symmetry_violations: Vec<String>,
    pub trees: usize,
    pub circuits: usize,
    pub census_violations: Vec<String>,
    pub errors: Vec<String>,
}

impl SweepSummary {
    pub fn merge(reports: &[GraphReport]) -> SweepSummary {
        let mut s = SweepSummary { graphs: reports.len(), ..Default::default() };
        for r in reports {
            s.flows += r.rows.len();
            s.indecomposable += r.rows.iter().filter(|x| x.oracle).count();
            s.disagreements.extend(r.rows.iter().filter(|x| x.oracle != x.fast).cloned());
            s.decomposition_violations.extend(r.decomposition_violations.iter().cloned());
            s.minimality_checks += r.minimality_checks;
            s.minimality_disagreements.extend(r.minimality_disagreements.iter().cloned());
            s.symmetry_violations.extend(r.symmetry_violations.iter().cloned());
            s.trees += r.trees;
            s.circuits += r.circuits;
            s.census_violations.extend(r.census_violations.iter().cloned());
            s.errors.extend(r.errors.iter().cloned());
        }
        s
    }
}

/// The full sweep: every family graph, every nontrivial flow in the box.
pub fn run_sweep(config: SweepConfig, mode: ExecutionMode) -> (Vec<GraphReport>, SweepSummary) {
    let family = sweep_graphs(config.max_vertices, config.max_edges);
    let reports = run_instances(&family, mode, |g| check_graph(g, config.bound));
    let summary = SweepSummary::merge(&reports);
    (reports, summary)
}

/// Checks on one cycle-tree given as a whole graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TreeReport {
    pub graph: String,
    pub edges: usize,
    pub parity: bool,
    pub directions: usize,
    pub circuit: bool,
    pub end_blocks: usize,
    pub half_terms: Option<usize>,
    /// Recognition and direction count problems.
    pub direction_violations: Vec<String>,
    pub half_violations: Vec<String>,
}

pub fn check_tree(fg: &FamilyGraph) -> TreeReport {
    let g = &fg.graph;
    let all: Vec<EdgeId> = g.edge_ids().collect();
    let mut rep = TreeReport { graph: fg.id.clone(), edges: all.len(), ..Default::default() };
    let tree = match detect_cycle_tree(g, &all) {
        Ok(t) => t,
        Err(e) => {
            rep.direction_violations.push(format!("not a cycle-tree: {e}"));
            return rep;
        }
    };
    rep.parity = tree.check_parity().holds;
    rep.end_blocks = tree.end_block_cycles().len();
    let dirs = match brute_force_directions(g, &all) {
        Ok(d) => d,
        Err(e) => {
            rep.direction_violations.push(e.to_string());
            return rep;
        }
    };
    rep.directions = dirs.len();
    let expected = if rep.parity { 2 } else { 0 };
    if dirs.len() != expected {
        rep.direction_violations.push(format!("{} directions, parity {}", dirs.len(), rep.parity));
    }
    let Ok(et) = tree.into_eulerian() else {
        return rep;
    };
    let eps_t = et.find_direction(g);
    if !dirs.contains(&eps_t) || !dirs.contains(&eps_t.negated()) {
        rep.direction_violations.push("constructed direction is not among the enumerated ones".into());
    }
    let class = et.classify(g);
    rep.circuit = class.is_circuit();
    if rep.circuit {
        return rep;
    }
    let w = et.canonical_closed_walk(g, &eps_t);
    match et.half_integer_decomposition(g, &w) {
        Ok(h) => {
            rep.half_terms = Some(h.terms.len());
            if let Err(e) = h.verify(g, &et, &w) {
                rep.half_violations.push(format!("half decomposition: {e}"));
            }
            let doubled: IntFlow = h.terms.iter().fold(IntFlow::zero(g.num_edges()), |acc, t| &acc + &t.indicator);
            let target = et.indicator(g.num_edges());
            if doubled != &target + &target {
                rep.half_violations.push("summand indicators do not add up to twice the tree indicator".into());
            }
            if h.terms.len() != rep.end_blocks {
                rep.half_violations.push(format!("{} summands, {} end-block cycles", h.terms.len(), rep.end_blocks));
            }
            for t in &h.terms {
                let re = detect_eulerian_cycle_tree(g, &t.edges).map(|s| s.classify(g));
                if !matches!(re, Some(CircuitClass::TypeIII { .. })) {
                    rep.half_violations.push(format!("summand {:?} is not type III", t.edges));
                }
            }
            // both list the same circuits, possibly rotated
            let sorted = |terms: &[crate::cycletree::HalfTerm]| {
                let mut v: Vec<Vec<EdgeId>> = terms.iter().map(|t| t.edges.clone()).collect();
                v.sort();
                v
            };
            match et.half_integer_decomposition_direct(g, &w) {
                Ok(d) if sorted(&d.terms) == sorted(&h.terms) => {}
                _ => rep.half_violations.push("inductive and direct decompositions differ".into()),
            }
        }
        Err(e) => rep.half_violations.push(format!("half decomposition failed: {e}")),
    }
    rep
}

/// Cycle-trees for the direction and half-integer checks: every sweep graph
/// that is itself a cycle-tree, then `random` seeded random trees with up to
/// `max_edges` edges, half of them forced to satisfy the parity condition.
pub fn cycle_tree_family(sweep: SweepConfig, random: usize, max_edges: usize, seed: u64) -> Vec<FamilyGraph> {
    let mut out: Vec<FamilyGraph> = sweep_graphs(sweep.max_vertices, sweep.max_edges)
        .into_iter()
        .filter(|fg| {
            let all: Vec<EdgeId> = fg.graph.edge_ids().collect();
            detect_cycle_tree(&fg.graph, &all).is_ok()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random {
        let graph = random_cycle_tree(&mut rng, max_edges, i % 2 == 0);
        out.push(FamilyGraph { id: format!("random-tree-{i}"), graph });
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TreeSummary {
    pub trees: usize,
    pub eulerian: usize,
    pub non_circuit: usize,
    pub max_edges: usize,
    pub direction_violations: Vec<String>,
    pub half_violations: Vec<String>,
}

pub fn run_tree_checks(family: &[FamilyGraph], mode: ExecutionMode) -> TreeSummary {
    let reports = run_instances(family, mode, check_tree);
    let mut s = TreeSummary { trees: reports.len(), ..Default::default() };
    for r in reports {
        s.eulerian += r.parity as usize;
        s.non_circuit += r.half_terms.is_some() as usize;
        s.max_edges = s.max_edges.max(r.edges);
        s.direction_violations.extend(r.direction_violations.iter().map(|v| format!("{}: {v}", r.graph)));
        s.half_violations.extend(r.half_violations.iter().map(|v| format!("{}: {v}", r.graph)));
    }
    s
}

/// Results of the random walk properties.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WalkSummary {
    pub closed_walks: usize,
    /// Closed walks whose characteristic vector is not a flow.
    pub flow_violations: Vec<String>,
    /// Closed walks of negative sign.
    pub sign_violations: Vec<String>,
    /// Walks returning to their start that are positive but not closed.
    pub converse_violations: Vec<String>,
    pub avoided_walks: usize,
    pub triple_vertex_violations: Vec<String>,
    pub non_eulerian_violations: Vec<String>,
    /// Avoided walks whose every rotation is avoided as well, and those
    /// among them that are not Eulerian.
    pub cyclically_avoided: usize,
    pub cyclic_non_eulerian: Vec<String>,
}

fn describe(g: &SignedGraph, w: &DirectedWalk) -> String {
    let edges: Vec<String> = g
        .edges()
        .iter()
        .map(|e| format!("{}{}{}", e.ends[0].0, e.ends[1].0, if e.sign.is_positive() { '+' } else { '-' }))
        .collect();
    let steps: Vec<String> = w.steps.iter().map(|s| format!("{}/{}{:+}", s.edge.0, s.from_end, s.dir_from)).collect();
    format!("[{}] start {} steps {}", edges.join(","), w.start.0, steps.join(" "))
}

/// Draws random returning walks until `closed` of them are closed, then
/// `avoided` random midway-back avoided closed walks.
pub fn run_walk_checks(closed: usize, avoided: usize, seed: u64) -> WalkSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = WalkSummary::default();
    while s.closed_walks < closed {
        let g = random_graph(&mut rng, 5, 8);
        let len = rng.gen_range(1..=12);
        let Some(w) = random_returning_walk(&mut rng, &g, len) else { continue };
        if !w.is_closed(&g) {
            if w.sign(&g).is_positive() {
                s.converse_violations.push(describe(&g, &w));
            }
            continue;
        }
        s.closed_walks += 1;
        let eps = random_orientation(&mut rng, &g);
        match w.characteristic_vector(&g, &eps) {
            Ok(cv) if is_flow(&g, &cv, &eps) => {}
            _ => s.flow_violations.push(describe(&g, &w)),
        }
        if !w.sign(&g).is_positive() {
            s.sign_violations.push(describe(&g, &w));
        }
    }
    let mut seen = BTreeSet::new();
    while s.avoided_walks < avoided {
        let g = random_graph(&mut rng, 4, 6);
        let Some(w) = random_avoided_closed_walk(&mut rng, &g, 12) else { continue };
        s.avoided_walks += 1;
        let d = describe(&g, &w);
        if w.has_triple_vertex(&g) && seen.insert(d.clone()) {
            s.triple_vertex_violations.push(d.clone());
        }
        let eulerian = w.is_eulerian(&g);
        if !eulerian && seen.insert(format!("e {d}")) {
            s.non_eulerian_violations.push(d.clone());
        }
        if (1..w.len()).all(|k| w.rotated(&g, k).is_midway_back_avoided(&g)) {
            s.cyclically_avoided += 1;
            if !eulerian {
                s.cyclic_non_eulerian.push(d);
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_on_a_small_sweep() {
        let config = SweepConfig { max_vertices: 2, max_edges: 3, bound: 2 };
        let (a, sa) = run_sweep(config, ExecutionMode::Sequential);
        let (b, sb) = run_sweep(config, ExecutionMode::Parallel);
        assert_eq!(a, b);
        assert_eq!(sa, sb);
        assert!(sa.flows > 0);
        assert!(sa.disagreements.is_empty(), "{:?}", sa.disagreements);
        assert!(sa.decomposition_violations.is_empty(), "{:?}", sa.decomposition_violations);
        assert!(sa.errors.is_empty(), "{:?}", sa.errors);
    }

    #[test]
    fn templates_are_exclusive_on_fixtures() {
        use crate::fixtures;
        for g in [fixtures::g2(), fixtures::g3(), fixtures::triangle()] {
            let all: Vec<EdgeId> = g.edge_ids().collect();
            let t = detect_cycle_tree(&g, &all).unwrap();
            assert_eq!(template_matches(&t).len(), 1);
        }
        let g5 = fixtures::g5();
        let all: Vec<EdgeId> = g5.edge_ids().collect();
        assert!(template_matches(&detect_cycle_tree(&g5, &all).unwrap()).is_empty());
    }

    #[test]
    fn tree_checks_on_a_few_random_trees() {
        let family = cycle_tree_family(SweepConfig { max_vertices: 2, max_edges: 2, bound: 1 }, 60, 8, 3);
        let s = run_tree_checks(&family, ExecutionMode::default());
        assert!(s.direction_violations.is_empty(), "{:?}", s.direction_violations);
        assert!(s.half_violations.is_empty(), "{:?}", s.half_violations);
        assert!(s.non_circuit > 0);
    }
}
