use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` has a dangling end at unknown vertex `{vertex}`")]
    DanglingEnd { edge: String, vertex: String },
    #[error("edge `{edge}` has sign {sign}, expected -1 or +1")]
    BadSign { edge: String, sign: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientationError {
    #[error("edge `{edge}`: slot values {values:?} violate s0*s1 = -sign ({sign})")]
    SlotProduct { edge: String, values: [i64; 2], sign: i64 },
    #[error("edge `{edge}`: slot value {value} is not -1 or +1")]
    BadValue { edge: String, value: i64 },
    #[error("orientation references unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("orientation is missing edge `{0}`")]
    MissingEdge(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("walk is empty")]
    Empty,
    #[error("step {step}: leaves from a vertex other than where step {prev} arrived")]
    VertexMismatch { step: usize, prev: usize },
    #[error("step {step}: direction values violate dir_from*dir_to = -sign")]
    DirectionProduct { step: usize },
    #[error("steps {prev} and {step}: no alternation of direction values")]
    NoAlternation { step: usize, prev: usize },
    #[error("walk is not closed")]
    NotClosed,
    #[error("step {step}: bad end index")]
    BadEnd { step: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleTreeError {
    #[error("edge set is empty")]
    Empty,
    #[error("edge set does not induce a connected subgraph")]
    Disconnected,
    #[error("cycles share edges (a block is neither a cycle nor a bridge)")]
    CyclesShareEdges,
    #[error("vertex `{0}` lies on three or more cycles")]
    ThreeCyclesMeet(String),
    #[error("a block path attaches at `{0}`, which is shared by two cycles")]
    PathAtSharedVertex(String),
    #[error("block paths meet at vertex `{0}`")]
    PathsMeet(String),
    #[error("a block path ends at `{0}` without reaching a cycle")]
    PendantPath(String),
    #[error("subgraph has no cycle")]
    NoCycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DirectionError {
    #[error("parity condition fails; the cycle-tree admits no direction")]
    NoDirection,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("cycle-tree is a circuit; the half-integer decomposition needs at least two block paths")]
    IsCircuit,
    #[error("cycle-tree does not satisfy the parity condition")]
    NotEulerian,
    #[error("walk is not a block-crossing closed walk of the cycle-tree: {0}")]
    BadWalk(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("flow is trivial (empty support)")]
    EmptySupport,
    #[error("function is not a flow: vertex `{vertex}` has charge {charge}")]
    NotAFlow { vertex: String, charge: i64 },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("size guard: {what} is {actual}, limit {limit}")]
    SizeGuard { what: &'static str, actual: usize, limit: usize },
}
