use thiserror::Error;

/// Everything that can go wrong while building gain graphs, solving spectra or
/// evaluating bounds.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GainError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("gain on edge {{{u}, {v}}} has modulus {modulus}, expected 1")]
    NonUnitGain { u: usize, v: usize, modulus: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("Jacobi sweeps did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("Laplacian is singular (graph is balanced)")]
    Singular,

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("graph has no triangles")]
    NoTriangle,

    #[error("graph has no induced path on three vertices")]
    NoPathTriple,

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    #[error("recurrence breakdown at k = {k}: nonpositive denominator at vertex {vertex}")]
    RecurrenceBreakdown { k: usize, vertex: usize },

    #[error("no valid k in 1..={0}")]
    NoValidK(usize),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("soundness violation in row '{row}': value {value} vs reference {reference}")]
    Soundness { row: String, value: f64, reference: f64 },
}

impl GainError {
    /// Process exit code used by the CLI.
    pub fn exit_code(&self) -> i32 {
        use GainError::*;
        match self {
            Hypothesis(_)
            | NoTriangle
            | NoPathTriple
            | EmptyGraph
            | Singular
            | InvalidBipartition(_)
            | RecurrenceBreakdown { .. }
            | NoValidK(_) => 3,
            SizeCap(_) => 4,
            Soundness { .. } | NoConvergence(_) => 1,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for GainError {
    fn from(e: std::io::Error) -> Self {
        GainError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, GainError>;
