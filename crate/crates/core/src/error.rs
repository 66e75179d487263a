use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("simplex cap exceeded: enumerated {count} simplices, cap {cap}")]
    SimplexCapExceeded { count: usize, cap: usize },

    #[error("dimension {p} out of range for complex of max dimension {max_dim}")]
    DimensionOutOfRange { p: usize, max_dim: usize },

    #[error("invalid subset-state descriptor: {0}")]
    DescriptorInvalid(String),

    #[error("subset-state blocks overlap on simplex {0:?}")]
    BlockOverlap(Vec<u32>),

    #[error("vertex tuple {0:?} is not a simplex of the complex")]
    NotASimplex(Vec<u32>),

    #[error("chain is not a cycle: boundary has {0} nonzero entries")]
    NotACycle(usize),

    #[error("chain is not unit norm (norm^2 = {0})")]
    NotUnitNorm(String),

    #[error("chain/operator dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian at ({row},{col})")]
    NonHermitian { row: usize, col: usize },

    #[error("eigensolver failed: {0}")]
    EigenFailure(String),

    #[error("unsupported gate: {0}")]
    UnsupportedGate(String),

    #[error("gate index out of range: {0}")]
    GateIndex(String),

    #[error("prehistory state requires at least one idle gate (L >= 1)")]
    PrehistoryNeedsIdle,

    #[error("Hamiltonian space too large: {qubits} qubits exceeds cap of {cap}")]
    HamiltonianTooLarge { qubits: usize, cap: usize },

    #[error("simulator dimension {dim} exceeds cap {cap}")]
    SimulatorCap { dim: usize, cap: usize },

    #[error("phase-estimation scaling failed: {0}")]
    ScalingFailed(String),

    #[error("a fill gadget for label {0} is already attached")]
    DuplicateGadget(String),

    #[error("basis label has length {got}, expected {expected}")]
    LabelLength { got: usize, expected: usize },

    #[error("reduction size cap: N = {n} qubits exceeds cap {cap}")]
    ReductionTooLarge { n: usize, cap: usize },

    #[error("gadget label {0} does not correspond to a diagonal (basis-projector) term")]
    GadgetNotDiagonal(String),

    #[error("complexes are not nested: {0}")]
    NotASubcomplex(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
