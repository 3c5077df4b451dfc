//! Orientations as per-slot arrow values.
//!
//! A slot value of `+1` is an arrow pointing away from the slot's vertex and
//! `-1` one pointing toward it. Every orientation satisfies the slot-product
//! law `value(e,0) * value(e,1) = -sign(e)`. Orientations may be partial
//! (defined on a subgraph only); edges outside the domain hold `None`.

use crate::error::OrientationError;
use crate::flow::IntFlow;
use crate::graph::{EdgeId, Sign, SignedGraph, Slot};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    values: Vec<Option<[i8; 2]>>,
}

fn slot_law_holds(values: [i8; 2], sign: Sign) -> bool {
    values[0] * values[1] == -sign.value()
}

impl Orientation {
    /// The orientation with `+1` on end 0 of every edge.
    pub fn canonical(g: &SignedGraph) -> Self {
        let values = g.edges().iter().map(|e| Some([1, -e.sign.value()])).collect();
        Orientation { values }
    }

    /// Total orientation from raw slot values, checked against `g`.
    pub fn from_values(g: &SignedGraph, values: &[[i64; 2]]) -> Result<Self, OrientationError> {
        if values.len() != g.num_edges() {
            let missing = g.edge_name(EdgeId(values.len().min(g.num_edges().saturating_sub(1))));
            return Err(OrientationError::MissingEdge(missing.to_string()));
        }
        let partial: Vec<Option<[i64; 2]>> = values.iter().map(|v| Some(*v)).collect();
        Orientation::partial(g, &partial)
    }

    /// Orientation on the subgraph of edges whose entry is `Some`.
    pub fn partial(g: &SignedGraph, values: &[Option<[i64; 2]>]) -> Result<Self, OrientationError> {
        let mut out = Vec::with_capacity(g.num_edges());
        for e in g.edge_ids() {
            let Some(raw) = values.get(e.0).copied().flatten() else {
                out.push(None);
                continue;
            };
            let name = g.edge_name(e).to_string();
            for &value in &raw {
                if value != 1 && value != -1 {
                    return Err(OrientationError::BadValue { edge: name, value });
                }
            }
            let pair = [raw[0] as i8, raw[1] as i8];
            if !slot_law_holds(pair, g.sign(e)) {
                return Err(OrientationError::SlotProduct {
                    edge: name,
                    values: raw,
                    sign: g.sign(e).value() as i64,
                });
            }
            out.push(Some(pair));
        }
        Ok(Orientation { values: out })
    }

    pub(crate) fn empty(num_edges: usize) -> Self {
        Orientation { values: vec![None; num_edges] }
    }

    pub fn num_edges(&self) -> usize {
        self.values.len()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.values.get(e.0).is_some_and(|v| v.is_some())
    }

    pub fn edge_values(&self, e: EdgeId) -> Option<[i8; 2]> {
        self.values.get(e.0).copied().flatten()
    }

    pub fn value(&self, s: Slot) -> Option<i8> {
        self.edge_values(s.edge).map(|v| v[s.end as usize])
    }

    /// Value at a slot that is known to be in the domain.
    pub fn at(&self, s: Slot) -> i8 {
        self.value(s).unwrap_or_else(|| panic!("slot {s:?} outside orientation domain"))
    }

    pub(crate) fn set_edge(&mut self, e: EdgeId, values: [i8; 2]) {
        self.values[e.0] = Some(values);
    }

    pub(crate) fn set_slot(&mut self, s: Slot, value: i8) {
        let entry = self.values[s.edge.0].get_or_insert([0, 0]);
        entry[s.end as usize] = value;
    }

    pub fn domain(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.values.iter().enumerate().filter(|(_, v)| v.is_some()).map(|(i, _)| EdgeId(i))
    }

    /// Slot-wise negation on the whole domain.
    pub fn negated(&self) -> Self {
        Orientation { values: self.values.iter().map(|v| v.map(|[a, b]| [-a, -b])).collect() }
    }

    /// Negation on a single edge.
    pub fn with_edge_negated(&self, e: EdgeId) -> Self {
        let mut out = self.clone();
        if let Some(v) = out.values[e.0].as_mut() {
            *v = [-v[0], -v[1]];
        }
        out
    }

    /// Restriction to the given edges.
    pub fn restricted<I: IntoIterator<Item = EdgeId>>(&self, edges: I) -> Self {
        let mut out = Orientation::empty(self.values.len());
        for e in edges {
            out.values[e.0] = self.values[e.0];
        }
        out
    }

    /// True iff every edge in the domain satisfies the slot-product law in `g`.
    pub fn satisfies_slot_law(&self, g: &SignedGraph) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(i, v)| v.is_none_or(|pair| slot_law_holds(pair, g.sign(EdgeId(i)))))
    }
}

/// Edgewise agreement of two orientations: `+1` where they agree on the slots
/// of `x`, `-1` where they disagree, `0` if `x` lies outside either domain.
pub fn coupling(a: &Orientation, b: &Orientation, x: EdgeId) -> i8 {
    match (a.edge_values(x), b.edge_values(x)) {
        (Some(va), Some(vb)) => {
            debug_assert_eq!(va[0] * vb[0], va[1] * vb[1], "coupling not well defined on {x:?}");
            va[0] * vb[0]
        }
        _ => 0,
    }
}

/// The orientation obtained from `eps` by reversing every edge on which `f`
/// is negative. With it, `|f|` is a nonnegative flow whenever `f` is a flow.
pub fn derived_orientation(f: &IntFlow, eps: &Orientation) -> Orientation {
    let mut out = eps.clone();
    for (i, &value) in f.values().iter().enumerate() {
        if value < 0 {
            out = out.with_edge_negated(EdgeId(i));
        }
    }
    out
}
