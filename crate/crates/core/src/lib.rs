//! Integer flows on signed graphs: decomposition into minimal directed
//! Eulerian walks, recognition of Eulerian cycle-trees, circuit
//! classification, and brute-force oracles for small instances.

pub mod blocks;
pub mod cycletree;
pub mod dot;
pub mod error;
pub mod family;
pub mod fixtures;
pub mod fra;
pub mod flow;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod orientation;
pub mod sweep;
pub mod walk;

pub use cycletree::{
    detect_cycle_tree, detect_eulerian_cycle_tree, CircuitClass, CycleTree, EulerianCycleTree, HalfDecomposition,
    HalfTerm, ParityReport,
};
pub use fra::{decompose_flow, fra_run, is_indecomposable, Decomposition, DecompositionTerm, FraOutcome, FraTrace};
pub use flow::{boundary, check_flow, is_flow, support, IntFlow, VertexCharge};
pub use graph::{sign_of_edge_set, validate_graph, EdgeId, EdgeSpec, Sign, SignedGraph, Slot, VertexId};
pub use orientation::{coupling, derived_orientation, Orientation};
pub use walk::{DirectedWalk, WalkStep};
