//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use sigflow::io::{parse_instance, Instance};
use sigflow::oracle::brute_force_indecomposable;
use sigflow::sweep::{
    cycle_tree_family, run_sweep, run_tree_checks, run_walk_checks, ExecutionMode, SweepConfig, SweepSummary,
};
use sigflow::{decompose_flow, is_indecomposable, CircuitClass};

const TREE_SEED: u64 = 0x7ee5;
const WALK_SEED: u64 = 0x3a1c;
const RANDOM_TREES: usize = 4000;
const CLOSED_WALKS: usize = 10_000;
const AVOIDED_WALKS: usize = 5_000;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture(name: &str) -> Instance {
    let path = fixture_dir().join(format!("{name}.json"));
    parse_instance(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn first(list: &[String]) -> String {
    list.first().cloned().unwrap_or_default()
}

fn equivalence(s: &SweepSummary) -> Verdict {
    let pass = s.flows > 0 && s.disagreements.is_empty() && s.symmetry_violations.is_empty() && s.errors.is_empty();
    let mut detail = format!(
        "{} graphs, {} nontrivial flows, {} indecomposable, {} disagreements, {} negation mismatches, {} errors",
        s.graphs,
        s.flows,
        s.indecomposable,
        s.disagreements.len(),
        s.symmetry_violations.len(),
        s.errors.len()
    );
    if let Some(r) = s.disagreements.first() {
        detail += &format!("; first {} f={:?} oracle={} fast={}", r.graph, r.flow, r.oracle, r.fast);
    }
    Verdict { pass, detail }
}

fn reduction(s: &SweepSummary) -> Verdict {
    let pass = s.flows > 0 && s.decomposition_violations.is_empty() && s.minimality_disagreements.is_empty();
    let mut detail = format!(
        "{} flows decomposed, {} violations, {} walk-minimality oracle checks with {} disagreements",
        s.flows,
        s.decomposition_violations.len(),
        s.minimality_checks,
        s.minimality_disagreements.len()
    );
    if !pass {
        detail += &format!("; first {}{}", first(&s.decomposition_violations), first(&s.minimality_disagreements));
    }
    Verdict { pass, detail }
}

fn census(s: &SweepSummary) -> Verdict {
    let pass = s.trees > 0 && s.census_violations.is_empty();
    let mut detail = format!(
        "{} Eulerian cycle-trees across the sweep graphs, {} circuits, {} exceptions",
        s.trees,
        s.circuits,
        s.census_violations.len()
    );
    if !pass {
        detail += &format!("; first {}", first(&s.census_violations));
    }
    Verdict { pass, detail }
}

fn worked_fixtures() -> Verdict {
    let mut problems = Vec::new();
    let mut expect = |name: &str, indecomposable: bool, class: Option<&str>, halves: Option<usize>| {
        let inst = fixture(name);
        let (g, eps) = (&inst.graph, &inst.orientation);
        let f = inst.flow.as_ref().unwrap();
        let oracle = brute_force_indecomposable(g, f, eps).unwrap();
        let fast = is_indecomposable(g, f, eps).unwrap();
        if oracle != indecomposable || fast.is_some() != indecomposable {
            problems.push(format!("{name}: oracle {oracle}, structural {}", fast.is_some()));
        }
        let Some(t) = fast else { return };
        let c = t.classify(g);
        if Some(c.name()) != class {
            problems.push(format!("{name}: class {}", c.name()));
        }
        let d = decompose_flow(g, f, eps).unwrap();
        if d.terms.len() != 1 {
            problems.push(format!("{name}: {} terms", d.terms.len()));
            return;
        }
        if let Some(k) = halves {
            let h = t.half_integer_decomposition(g, &d.terms[0].walk).unwrap();
            let all_iii = h.terms.iter().all(|x| matches!(x.class, CircuitClass::TypeIII { .. }));
            if h.terms.len() != k || !all_iii || h.verify(g, &t, &d.terms[0].walk).is_err() {
                problems.push(format!("{name}: half decomposition into {} terms", h.terms.len()));
            }
        }
    };
    expect("g2", true, Some("TypeII"), None);
    expect("g2_double", false, None, None);
    expect("g3", true, Some("TypeIII"), None);
    expect("g5", true, Some("NotCircuit"), Some(2));
    let pass = problems.is_empty();
    let detail = if pass {
        "G2 (1,1) indecomposable TypeII, G2 (2,2) decomposable, G3 (1,2,1) TypeIII, G5 NotCircuit into 2 TypeIII".into()
    } else {
        problems.join("; ")
    };
    Verdict { pass, detail }
}

fn determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_sigflow");
    let mut problems = Vec::new();
    let names = ["g2", "g2_double", "g3", "g5", "triangle"];
    for name in names {
        let path = fixture_dir().join(format!("{name}.json"));
        let runs: Vec<Vec<u8>> = (0..3)
            .map(|_| {
                let out = Command::new(bin).arg("decompose").arg(&path).arg("--trace").output().unwrap();
                if !out.status.success() {
                    problems.push(format!("{name}: exit {:?}", out.status.code()));
                }
                out.stdout
            })
            .collect();
        if runs[0].is_empty() || runs.iter().any(|r| *r != runs[0]) {
            problems.push(format!("{name}: reports differ"));
        }
    }
    let pass = problems.is_empty();
    let detail =
        if pass { format!("{} fixtures, 3 runs each, byte-identical", names.len()) } else { problems.join("; ") };
    Verdict { pass, detail }
}

fn main() {
    let start = Instant::now();
    let (_, sweep) = run_sweep(SweepConfig::default(), ExecutionMode::default());
    let sweep_time = start.elapsed();

    let family = cycle_tree_family(SweepConfig::default(), RANDOM_TREES, 8, TREE_SEED);
    let trees = run_tree_checks(&family, ExecutionMode::default());
    let walks = run_walk_checks(CLOSED_WALKS, AVOIDED_WALKS, WALK_SEED);

    let directions = Verdict {
        pass: trees.trees > 0 && trees.max_edges <= 8 && trees.direction_violations.is_empty(),
        detail: format!(
            "{} cycle-trees (up to {} edges), {} satisfy parity, {} exceptions{}",
            trees.trees,
            trees.max_edges,
            trees.eulerian,
            trees.direction_violations.len(),
            trees.direction_violations.first().map(|v| format!("; first {v}")).unwrap_or_default()
        ),
    };
    let half = Verdict {
        pass: trees.non_circuit > 0 && trees.half_violations.is_empty(),
        detail: format!(
            "{} non-circuit Eulerian cycle-trees, {} exceptions{}",
            trees.non_circuit,
            trees.half_violations.len(),
            trees.half_violations.first().map(|v| format!("; first {v}")).unwrap_or_default()
        ),
    };
    let walk_pass = walks.flow_violations.is_empty()
        && walks.sign_violations.is_empty()
        && walks.triple_vertex_violations.is_empty()
        && walks.non_eulerian_violations.is_empty();
    let mut walk_detail = format!(
        "{} closed walks: {} non-flow characteristic vectors, {} negative signs; {} avoided closed walks: {} with a triple vertex, {} not Eulerian",
        walks.closed_walks,
        walks.flow_violations.len(),
        walks.sign_violations.len(),
        walks.avoided_walks,
        walks.triple_vertex_violations.len(),
        walks.non_eulerian_violations.len()
    );
    if let Some(w) = walks.non_eulerian_violations.iter().find(|w| w.matches('/').count() > 2) {
        walk_detail += &format!("; e.g. {w}");
    }
    let walk = Verdict { pass: walk_pass, detail: walk_detail };

    let verdicts = [
        ("indecomposability equivalence", equivalence(&sweep)),
        ("flow reduction soundness", reduction(&sweep)),
        ("direction existence and uniqueness", directions),
        ("circuit classification", census(&sweep)),
        ("half-integer identity", half),
        ("walk properties", walk),
        ("worked fixtures", worked_fixtures()),
        ("determinism", determinism()),
    ];
    println!("acceptance (sweep took {:.1}s)", sweep_time.as_secs_f64());
    let mut failed = 0;
    for (i, (name, v)) in verdicts.iter().enumerate() {
        println!("criterion {} {}: {} ({})", i + 1, name, if v.pass { "PASS" } else { "FAIL" }, v.detail);
        failed += !v.pass as usize;
    }
    println!("{} of {} criteria pass", verdicts.len() - failed, verdicts.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
