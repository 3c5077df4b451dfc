//! Properties on random instances somewhat larger than the exhaustive sweep.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sigflow::family::{random_cycle_tree, random_graph, random_orientation, FamilyGraph};
use sigflow::io::{document_of, parse_instance};
use sigflow::oracle::{brute_force_indecomposable, enumerate_flows};
use sigflow::sweep::{check_graph, run_sweep, ExecutionMode, SweepConfig};
use sigflow::{boundary, decompose_flow, detect_cycle_tree, is_flow, is_indecomposable, IntFlow};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decompositions_of_random_flows(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 5, 7);
        let eps = random_orientation(&mut rng, &g);
        let fbox = enumerate_flows(&g, &eps, 2).unwrap();
        let flows: Vec<&IntFlow> = fbox.nontrivial().collect();
        prop_assume!(!flows.is_empty());
        for _ in 0..8 {
            let f = flows[rng.gen_range(0..flows.len())];
            let d = decompose_flow(&g, f, &eps).unwrap();
            prop_assert_eq!(&d.sum(), f);
            for t in &d.terms {
                prop_assert!(t.flow.sign_compatible(f));
                prop_assert!(is_flow(&g, &t.flow, &eps));
                prop_assert!(is_indecomposable(&g, &t.flow, &eps).unwrap().is_some());
                prop_assert!(brute_force_indecomposable(&g, &t.flow, &eps).unwrap());
                prop_assert!(t.walk.is_minimal_eulerian(&g));
            }
            let fast = is_indecomposable(&g, f, &eps).unwrap().is_some();
            prop_assert_eq!(fast, brute_force_indecomposable(&g, f, &eps).unwrap());
            prop_assert_eq!(fast, d.terms.len() == 1);
        }
    }

    #[test]
    fn boundary_is_linear(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 5, 9);
        let eps = random_orientation(&mut rng, &g);
        let mut draw = || IntFlow::new((0..g.num_edges()).map(|_| rng.gen_range(-4..=4)).collect());
        let (a, b) = (draw(), draw());
        let sum = boundary(&g, &(&a + &b), &eps);
        let (ba, bb) = (boundary(&g, &a, &eps), boundary(&g, &b, &eps));
        for v in g.vertex_ids() {
            prop_assert_eq!(sum.get(v), ba.get(v) + bb.get(v));
        }
    }

    #[test]
    fn random_cycle_tree_directions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_cycle_tree(&mut rng, 12, true);
        let all: Vec<_> = g.edge_ids().collect();
        let t = detect_cycle_tree(&g, &all).unwrap().into_eulerian().unwrap();
        let eps_t = t.find_direction(&g);
        prop_assert!(t.is_direction(&g, &eps_t));
        prop_assert!(t.is_direction(&g, &eps_t.negated()));
        let w = t.canonical_closed_walk(&g, &eps_t);
        prop_assert!(w.is_closed(&g) && w.is_midway_back_avoided(&g) && w.is_minimal_eulerian(&g));
        prop_assert_eq!(w.characteristic_vector(&g, &eps_t).unwrap(), t.indicator(g.num_edges()));
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 6, 10);
        let eps = random_orientation(&mut rng, &g);
        let f = IntFlow::new((0..g.num_edges()).map(|_| rng.gen_range(-3..=3)).collect());
        let text = serde_json::to_string_pretty(&document_of(&g, Some(&eps), Some(&f))).unwrap();
        let inst = parse_instance(&text).unwrap();
        prop_assert_eq!(inst.graph, g);
        prop_assert_eq!(inst.orientation, eps);
        prop_assert_eq!(inst.flow, Some(f));
    }
}

#[test]
fn sequential_and_parallel_sweeps_agree() {
    let config = SweepConfig { max_vertices: 3, max_edges: 3, bound: 2 };
    let (a, sa) = run_sweep(config, ExecutionMode::Sequential);
    let (b, sb) = run_sweep(config, ExecutionMode::Parallel);
    assert_eq!(a, b);
    assert_eq!(sa, sb);
    assert!(sa.disagreements.is_empty());
}

#[test]
fn sweep_checks_under_a_random_orientation_family() {
    // the sweep uses canonical orientations; switching orientation must not
    // change which flows are indecomposable, only their coordinates
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let g = random_graph(&mut rng, 3, 5);
        let eps = random_orientation(&mut rng, &g);
        for f in enumerate_flows(&g, &eps, 2).unwrap().nontrivial() {
            assert_eq!(
                is_indecomposable(&g, f, &eps).unwrap().is_some(),
                brute_force_indecomposable(&g, f, &eps).unwrap()
            );
        }
        let report = check_graph(&FamilyGraph { id: "random".into(), graph: g }, 2);
        assert!(report.decomposition_violations.is_empty());
        assert!(report.census_violations.is_empty());
    }
}
