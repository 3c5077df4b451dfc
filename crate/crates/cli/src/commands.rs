use std::path::Path;

use serde_json::{json, Value};
use sigflow::blocks::is_connected;
use sigflow::dot::DotView;
use sigflow::error::{FlowError, OracleError};
use sigflow::graph::EdgeId;
use sigflow::io::{parse_instance, Instance};
use sigflow::oracle::{brute_force_indecomposable, enumerate_flows, MAX_EDGES, MAX_FLOW_VALUE};
use sigflow::sweep::{run_sweep, ExecutionMode, SweepConfig, VerdictRow};
use sigflow::{boundary, check_flow, decompose_flow, detect_cycle_tree, is_indecomposable, CircuitClass, IntFlow};

use crate::args::{ClassifyArgs, Command, DecomposeArgs, FileArgs, Format, OracleArgs};
use crate::describe;
use crate::{Failure, Produced, Status};

pub fn dispatch(command: &Command, digest: &mut Option<String>) -> Result<Produced, Failure> {
    match command {
        Command::Check(a) => check(a, digest),
        Command::Decompose(a) => decompose(a, digest),
        Command::Classify(a) => classify(a, digest),
        Command::Oracle(a) => oracle(a, digest),
    }
}

fn load(path: &Path, digest: &mut Option<String>) -> Result<Instance, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    *digest = Some(crate::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| Failure::invalid(format!("{}: not UTF-8", path.display())))?;
    parse_instance(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn flow_failure(e: FlowError) -> Failure {
    match e {
        FlowError::Invariant(m) => Failure::invariant(m),
        other => Failure::invalid(other.to_string()),
    }
}

fn guard_failure(e: OracleError) -> Failure {
    Failure::guard(e.to_string())
}

fn require_flow(inst: &Instance) -> Result<&IntFlow, Failure> {
    let f = inst.flow.as_ref().ok_or_else(|| Failure::invalid("input has no `flow` field"))?;
    check_flow(&inst.graph, f, &inst.orientation).or_else(|e| match e {
        FlowError::EmptySupport => Ok(()),
        e => Err(flow_failure(e)),
    })?;
    Ok(f)
}

fn check(a: &FileArgs, digest: &mut Option<String>) -> Result<Produced, Failure> {
    let inst = load(&a.file, digest)?;
    let g = &inst.graph;
    let mut result = json!({
        "vertices": g.num_vertices(),
        "edges": g.num_edges(),
        "orientation": describe::orientation(g, &inst.orientation),
    });
    if let Some(f) = &inst.flow {
        check_flow(g, f, &inst.orientation).or_else(|e| match e {
            FlowError::EmptySupport => Ok(()),
            e => Err(flow_failure(e)),
        })?;
        let charge = boundary(g, f, &inst.orientation);
        result["flow"] = json!({
            "values": describe::flow(g, f),
            "trivial": f.is_zero(),
            "support": describe::edge_names(g, f.support()),
            "conservative": charge.is_zero(),
        });
    }
    Ok(Produced::json(result))
}

fn decompose(a: &DecomposeArgs, digest: &mut Option<String>) -> Result<Produced, Failure> {
    let inst = load(&a.file.file, digest)?;
    let g = &inst.graph;
    let f = require_flow(&inst)?;
    if f.is_zero() {
        let result = json!({"flow": describe::flow(g, f), "notice": "trivial flow, nothing to decompose", "terms": []});
        return Ok(Produced {
            rendered: (a.format == Format::Dot).then(|| {
                DotView { name: "flow", graph: g, orientation: Some(&inst.orientation), tree: None, flow: Some(f) }
                    .render()
            }),
            ..Produced::json(result)
        });
    }
    let d = decompose_flow(g, f, &inst.orientation).map_err(flow_failure)?;
    let mut terms = Vec::new();
    let mut dots = String::new();
    for (i, t) in d.terms.iter().enumerate() {
        let mut term = json!({
            "walk": describe::walk(g, &t.walk),
            "flow": describe::flow(g, &t.flow),
            "cycle_tree": describe::tree(g, t.tree.tree()),
            "class": describe::class(g, t.tree.tree(), &t.class),
        });
        if t.class == CircuitClass::NotCircuit {
            let h = t
                .tree
                .half_integer_decomposition(g, &t.walk)
                .map_err(|e| Failure::invariant(format!("term {i}: {e}")))?;
            h.verify(g, &t.tree, &t.walk).map_err(|e| Failure::invariant(format!("term {i}: {e}")))?;
            term["half_decomposition"] = describe::half(g, &h);
        }
        if a.trace {
            term["trace"] = describe::trace(g, &t.trace);
        }
        terms.push(term);
        if a.format == Format::Dot {
            let eps = t.walk.direction(g.num_edges());
            let name = format!("term{i}");
            dots.push_str(
                &DotView { name: &name, graph: g, orientation: Some(&eps), tree: Some(t.tree.tree()), flow: Some(&t.flow) }
                    .render(),
            );
        }
    }
    let result = json!({"flow": describe::flow(g, f), "terms": terms});
    Ok(Produced { rendered: (a.format == Format::Dot).then_some(dots), ..Produced::json(result) })
}

fn classify(a: &ClassifyArgs, digest: &mut Option<String>) -> Result<Produced, Failure> {
    let inst = load(&a.file.file, digest)?;
    let g = &inst.graph;
    let edges: Vec<EdgeId> = match &inst.flow {
        Some(f) if !f.is_zero() => f.support(),
        _ => g.edge_ids().collect(),
    };
    if edges.is_empty() || !is_connected(g, &edges) {
        return Err(Failure::invalid("edge set does not induce a connected subgraph"));
    }
    let mut result = json!({"edges": describe::edge_names(g, edges.iter().copied())});
    let tree = match detect_cycle_tree(g, &edges) {
        Ok(t) => t,
        Err(e) => {
            result["cycle_tree"] = Value::Null;
            result["reason"] = e.to_string().into();
            return Ok(Produced::json(result));
        }
    };
    let parity = tree.check_parity();
    result["cycle_tree"] = describe::tree(g, &tree);
    result["parity"] = describe::parity(&parity);
    let mut direction = None;
    match tree.clone().into_eulerian() {
        Ok(et) => {
            let eps_t = et.find_direction(g);
            result["direction"] = describe::orientation(g, &eps_t);
            result["indicator"] = describe::flow(g, &et.indicator(g.num_edges()));
            result["class"] = describe::class(g, &tree, &et.classify(g));
            direction = Some(eps_t);
        }
        Err(e) => {
            result["direction"] = Value::Null;
            result["class"] = Value::Null;
            result["reason"] = e.to_string().into();
        }
    }
    let rendered = (a.format == Format::Dot).then(|| {
        DotView { name: "classify", graph: g, orientation: direction.as_ref(), tree: Some(&tree), flow: None }.render()
    });
    Ok(Produced { rendered, ..Produced::json(result) })
}

fn verdict(inst: &Instance, f: &IntFlow) -> Result<VerdictRow, Failure> {
    let g = &inst.graph;
    let oracle = brute_force_indecomposable(g, f, &inst.orientation).map_err(guard_failure)?;
    let fast = is_indecomposable(g, f, &inst.orientation).map_err(flow_failure)?.is_some();
    Ok(VerdictRow { graph: "input".into(), flow: f.values().to_vec(), oracle, fast })
}

fn row_json(g: &sigflow::SignedGraph, r: &VerdictRow) -> Value {
    json!({
        "graph": r.graph,
        "flow": describe::flow(g, &IntFlow::new(r.flow.clone())),
        "oracle": r.oracle,
        "fast": r.fast,
    })
}

fn oracle(a: &OracleArgs, digest: &mut Option<String>) -> Result<Produced, Failure> {
    if a.bound < 0 {
        return Err(Failure::invalid("--bound must be nonnegative"));
    }
    if a.bound > MAX_FLOW_VALUE {
        return Err(Failure::guard(format!("size guard: flow bound is {}, limit {MAX_FLOW_VALUE}", a.bound)));
    }
    if a.family {
        return family(a);
    }
    let path = a.file.as_ref().expect("clap requires a file without --family");
    let inst = load(path, digest)?;
    let g = &inst.graph;
    if g.num_edges() > MAX_EDGES {
        return Err(Failure::guard(format!("size guard: edge count is {}, limit {MAX_EDGES}", g.num_edges())));
    }
    let rows = match &inst.flow {
        Some(_) => {
            let f = require_flow(&inst)?;
            if f.is_zero() {
                return Err(Failure::invalid("flow is trivial (empty support)"));
            }
            vec![verdict(&inst, f)?]
        }
        None => {
            let fbox = enumerate_flows(g, &inst.orientation, a.bound).map_err(guard_failure)?;
            fbox.nontrivial().map(|f| verdict(&inst, f)).collect::<Result<Vec<_>, _>>()?
        }
    };
    let disagreements = rows.iter().filter(|r| r.oracle != r.fast).count();
    let result = json!({
        "rows": rows.iter().map(|r| row_json(g, r)).collect::<Vec<_>>(),
        "disagreements": disagreements,
    });
    let status = if disagreements == 0 { Status::Ok } else { Status::Invariant };
    Ok(Produced { status, ..Produced::json(result) })
}

fn family(a: &OracleArgs) -> Result<Produced, Failure> {
    if a.max_edges > MAX_EDGES {
        return Err(Failure::guard(format!("size guard: edge count is {}, limit {MAX_EDGES}", a.max_edges)));
    }
    let config = SweepConfig { max_vertices: 4, max_edges: a.max_edges, bound: a.bound };
    let (reports, summary) = run_sweep(config, ExecutionMode::default());
    let clean = summary.disagreements.is_empty()
        && summary.decomposition_violations.is_empty()
        && summary.minimality_disagreements.is_empty()
        && summary.symmetry_violations.is_empty()
        && summary.census_violations.is_empty()
        && summary.errors.is_empty();
    let mut result = json!({
        "config": config,
        "summary": summary,
        "zero_disagreements": clean,
    });
    if a.trace {
        let table: Vec<&VerdictRow> = reports.iter().flat_map(|r| &r.rows).collect();
        result["verdict_table"] = serde_json::to_value(table).expect("table serializes");
    }
    Ok(Produced { status: if clean { Status::Ok } else { Status::Invariant }, ..Produced::json(result) })
}
