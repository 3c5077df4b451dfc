//! The flow reduction algorithm, full flow decomposition, and the
//! structural indecomposability test.
//!
//! The algorithm grows a directed walk along `|f|` under `eps_f`, each new
//! edge leaving the current vertex against the value on which the walk
//! arrived. It stops as soon as the walk revisits a vertex in a way that
//! closes a directed Eulerian walk:
//!
//! * the revisited vertex `u_b` already occurred twice (`DoublePoint`);
//! * some earlier double vertex brackets `u_b` (`DoublePair`);
//! * the walk arrives at `u_b` against the value it left with (`Reversal`).
//!
//! Otherwise it keeps extending. Edges are taken in order of id, and for a
//! loop end 0 is tried first.

use serde::Serialize;

use crate::blocks::cut_points;
use crate::cycletree::{detect_cycle_tree, detect_eulerian_cycle_tree, CircuitClass, EulerianCycleTree};
use crate::error::FlowError;
use crate::flow::{check_flow, IntFlow};
use crate::graph::{SignedGraph, Slot, VertexId};
use crate::orientation::{derived_orientation, Orientation};
use crate::walk::{DirectedWalk, WalkStep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StopRule {
    DoublePoint,
    DoublePair,
    Reversal,
}

/// Shape of the closed walk cut out of the grown walk when it stops.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClosingForm {
    /// `u_b x_{b+1} .. x_l u_l`
    FromBeta,
    /// `u_a x_{a+1} .. x_l u_l`
    FromAlpha,
    /// `u_b x_b .. x_{a+1} u_a` reversed, then `x_{c+1} .. x_l u_l`
    Spliced,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    /// Walk length after this step.
    pub length: usize,
    pub edge: usize,
    pub from_end: u8,
    /// Greatest earlier index of the vertex reached, if it was seen before.
    pub revisits: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StopRecord {
    pub rule: StopRule,
    pub form: ClosingForm,
    pub length: usize,
    pub beta: usize,
    pub alpha: Option<usize>,
    pub gamma: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FraTrace {
    pub steps: Vec<TraceStep>,
    pub stop: StopRecord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FraOutcome {
    /// Closed walk directed along `eps_f`.
    pub walk: DirectedWalk,
    pub trace: FraTrace,
}

struct Grower<'a> {
    g: &'a SignedGraph,
    eps_f: &'a Orientation,
    residual: Vec<i64>,
    steps: Vec<WalkStep>,
    /// `u_0 .. u_l`
    vertices: Vec<VertexId>,
    trace: Vec<TraceStep>,
}

impl Grower<'_> {
    fn push(&mut self, slot: Slot) {
        let step = WalkStep {
            edge: slot.edge,
            from_end: slot.end,
            dir_from: self.eps_f.at(slot),
            dir_to: self.eps_f.at(slot.other()),
        };
        self.residual[slot.edge.0] -= 1;
        self.steps.push(step);
        let at = self.g.slot_vertex(slot.other());
        let l = self.vertices.len();
        let revisits = self.vertices.iter().rposition(|&v| v == at);
        self.vertices.push(at);
        self.trace.push(TraceStep { length: l, edge: slot.edge.0, from_end: slot.end, revisits });
    }

    fn extend(&mut self) -> Result<(), FlowError> {
        let last = *self.steps.last().expect("walk is started");
        let at = *self.vertices.last().unwrap();
        let want = -last.dir_to;
        let mut candidates: Vec<Slot> = self
            .g
            .slots_at(at)
            .iter()
            .copied()
            .filter(|s| s.edge != last.edge && self.residual[s.edge.0] > 0 && self.eps_f.at(*s) == want)
            .collect();
        candidates.sort();
        let slot = *candidates.first().ok_or_else(|| {
            FlowError::Invariant(format!(
                "no edge continues the walk at vertex `{}` after {} steps",
                self.g.vertex_name(at),
                self.steps.len()
            ))
        })?;
        self.push(slot);
        Ok(())
    }

    fn occurrences(&self, v: VertexId, below: usize) -> Vec<usize> {
        (0..below).filter(|&i| self.vertices[i] == v).collect()
    }

    /// Runs the revisit checks at `u_l`. Returns the closed walk if one of
    /// the stop rules fires.
    fn try_stop(&self) -> Result<Option<(DirectedWalk, StopRecord)>, FlowError> {
        let l = self.steps.len();
        let at = self.vertices[l];
        let Some(beta) = self.vertices[..l].iter().rposition(|&v| v == at) else {
            return Ok(None);
        };
        let arrive = self.steps[l - 1].dir_to;
        let left = self.steps[beta].dir_from;
        let opposite = arrive == -left;
        let record = |rule, form, alpha, gamma| StopRecord { rule, form, length: l, beta, alpha, gamma };
        let slice = |from: usize| DirectedWalk { start: self.vertices[from], steps: self.steps[from..l].to_vec() };

        let earlier = self.occurrences(at, beta);
        if earlier.len() > 1 {
            return Err(FlowError::Invariant(format!("vertex `{}` reached a third time", self.g.vertex_name(at))));
        }
        if let Some(&alpha) = earlier.first() {
            return Ok(Some(if opposite {
                (slice(beta), record(StopRule::DoublePoint, ClosingForm::FromBeta, Some(alpha), None))
            } else {
                (slice(alpha), record(StopRule::DoublePoint, ClosingForm::FromAlpha, Some(alpha), None))
            }));
        }

        // double vertices u_a = u_c with a < beta < c < l: smallest c, then largest a
        let pair = (beta + 1..l).find_map(|c| (0..beta).rev().find(|&a| self.vertices[a] == self.vertices[c]).map(|a| (a, c)));
        if let Some((alpha, gamma)) = pair {
            if opposite {
                return Ok(Some((slice(beta), record(StopRule::DoublePair, ClosingForm::FromBeta, Some(alpha), Some(gamma)))));
            }
            let mut steps: Vec<WalkStep> = self.steps[alpha..beta].iter().rev().map(WalkStep::reversed).collect();
            steps.extend_from_slice(&self.steps[gamma..l]);
            let walk = DirectedWalk { start: self.vertices[beta], steps };
            return Ok(Some((walk, record(StopRule::DoublePair, ClosingForm::Spliced, Some(alpha), Some(gamma)))));
        }

        if opposite {
            return Ok(Some((slice(beta), record(StopRule::Reversal, ClosingForm::FromBeta, None, None))));
        }
        Ok(None)
    }
}

/// Checks everything the algorithm guarantees about its output walk.
fn check_outcome(g: &SignedGraph, f_abs: &IntFlow, walk: &DirectedWalk) -> Result<(), FlowError> {
    let fail = |what: &str| Err(FlowError::Invariant(format!("walk found by reduction {what}")));
    if walk.validate(g).is_err() || !walk.is_closed(g) {
        return fail("is not a closed directed walk");
    }
    if !walk.is_midway_back_avoided(g) {
        return fail("is not midway-back avoided");
    }
    if walk.has_triple_vertex(g) {
        return fail("has a triple vertex");
    }
    let cuts = cut_points(g, &walk.support());
    if walk.double_vertices(g).iter().any(|v| !cuts.contains(v)) {
        return fail("has a double vertex that is not a cut-point");
    }
    if !walk.is_minimal_eulerian(g) {
        return fail("is not a minimal Eulerian walk");
    }
    let mult = walk.edge_multiplicity(g.num_edges());
    if mult.iter().zip(f_abs.values()).any(|(&m, &x)| m as i64 > x) {
        return fail("exceeds |f|");
    }
    Ok(())
}

/// Finds one minimal directed Eulerian walk inside the flow `f`. The walk is
/// directed along `eps_f`.
pub fn fra_run(g: &SignedGraph, f: &IntFlow, eps: &Orientation) -> Result<FraOutcome, FlowError> {
    if f.is_zero() {
        return Err(FlowError::EmptySupport);
    }
    check_flow(g, f, eps)?;
    let eps_f = derived_orientation(f, eps);
    let f_abs = f.abs();
    let mut grower = Grower {
        g,
        eps_f: &eps_f,
        residual: f_abs.values().to_vec(),
        steps: Vec::new(),
        vertices: Vec::new(),
        trace: Vec::new(),
    };
    let first = f.support()[0];
    grower.vertices.push(g.edge(first).ends[0]);
    grower.push(Slot::new(first, 0));
    let total: i64 = f_abs.values().iter().sum();
    loop {
        if let Some((walk, stop)) = grower.try_stop()? {
            check_outcome(g, &f_abs, &walk)?;
            let char_vec = walk.characteristic_vector(g, eps).map_err(|e| FlowError::Invariant(e.to_string()))?;
            if !char_vec.sign_compatible(f) {
                return Err(FlowError::Invariant("walk flow is not sign-compatible with f".into()));
            }
            return Ok(FraOutcome { walk, trace: FraTrace { steps: grower.trace, stop } });
        }
        if grower.steps.len() as i64 >= total {
            return Err(FlowError::Invariant("walk outgrew the flow without closing".into()));
        }
        grower.extend()?;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTerm {
    pub walk: DirectedWalk,
    pub tree: EulerianCycleTree,
    pub class: CircuitClass,
    /// `[eps, eps_f] * I_T`, equal to the walk's characteristic vector.
    pub flow: IntFlow,
    pub trace: FraTrace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub flow: IntFlow,
    pub terms: Vec<DecompositionTerm>,
}

impl Decomposition {
    pub fn sum(&self) -> IntFlow {
        self.terms.iter().fold(IntFlow::zero(self.flow.len()), |acc, t| &acc + &t.flow)
    }
}

/// Repeats the reduction on the residual until nothing is left. Terms come
/// in the order they are found.
pub fn decompose_flow(g: &SignedGraph, f: &IntFlow, eps: &Orientation) -> Result<Decomposition, FlowError> {
    check_flow(g, f, eps)?;
    let mut residual = f.clone();
    let mut terms = Vec::new();
    while !residual.is_zero() {
        let outcome = fra_run(g, &residual, eps)?;
        let tree = detect_eulerian_cycle_tree(g, &outcome.walk.support())
            .ok_or_else(|| FlowError::Invariant("walk support is not an Eulerian cycle-tree".into()))?;
        let eps_f = derived_orientation(&residual, eps);
        let flow = tree.indicator(g.num_edges()).coupled(eps, &eps_f);
        let char_vec = outcome.walk.characteristic_vector(g, eps).map_err(|e| FlowError::Invariant(e.to_string()))?;
        if char_vec != flow {
            return Err(FlowError::Invariant("characteristic vector differs from the signed indicator".into()));
        }
        residual = &residual - &flow;
        if !flow.sign_compatible(f) {
            return Err(FlowError::Invariant("term is not sign-compatible with f".into()));
        }
        let class = tree.classify(g);
        terms.push(DecompositionTerm { walk: outcome.walk, tree, class, flow, trace: outcome.trace });
    }
    Ok(Decomposition { flow: f.clone(), terms })
}

/// Structural test: `f` is indecomposable exactly when its support is an
/// Eulerian cycle-tree `T` with `|f| = I_T`. Returns `T` as the witness.
pub fn is_indecomposable(
    g: &SignedGraph,
    f: &IntFlow,
    eps: &Orientation,
) -> Result<Option<EulerianCycleTree>, FlowError> {
    if f.is_zero() {
        return Err(FlowError::EmptySupport);
    }
    check_flow(g, f, eps)?;
    let Ok(tree) = detect_cycle_tree(g, &f.support()) else {
        return Ok(None);
    };
    let Ok(tree) = tree.into_eulerian() else {
        return Ok(None);
    };
    if f.abs().values() != tree.indicator_values(g.num_edges()).as_slice() {
        return Ok(None);
    }
    let eps_f = derived_orientation(f, eps).restricted(tree.edges.iter().copied());
    if !tree.is_direction(g, &eps_f) {
        return Err(FlowError::Invariant("eps_f is not a direction of the witness cycle-tree".into()));
    }
    Ok(Some(tree))
}
