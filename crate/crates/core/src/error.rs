use thiserror::Error;

/// Errors surfaced by polytope construction, Fourier evaluation and the
/// lattice/zonotope machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("input points span an affine subspace of dimension {rank}, expected {dim}")]
    DegenerateInput { rank: usize, dim: usize },
    #[error("dimension {0} exceeds the supported limit {1}")]
    DimensionTooLarge(usize, usize),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("polytope is not simple at vertex {0}")]
    NotSimpleAtVertex(usize),
    #[error("polytope is not simple")]
    NotSimple,
    #[error("polytope has non-rational data")]
    NotRational,
    #[error("axis index {0} out of range for dimension {1}")]
    AxisOutOfRange(usize, usize),
    #[error("frequency is orthogonal to the edge {edge:?} of the fan at vertex {vertex}")]
    SingularFrequency { vertex: usize, edge: (usize, usize) },
    #[error("rationality queries are not supported for floating-point vertices")]
    NumericModeUnsupported,
    #[error("enumeration box of radius {0} exhausted; retry with a larger --enum-bound")]
    EnumerationExhausted(i64),
    #[error("an edge lies in a hyperplane x_{0} = c; the rank-one construction does not apply")]
    AxisEdgeViolation(usize),
    #[error("axis {0} carries irrational vertex components")]
    IrrationalAxis(usize),
    #[error("no integer kernel exists for this matrix (rationality criterion failed)")]
    NoIntegerKernel,
    #[error("rational reconstruction is ambiguous (best residual {0:.3e}); refusing to guess")]
    AmbiguousReconstruction(f64),
    #[error("sigma vectors are linearly dependent; the kernel fails the orthogonality condition")]
    DependentSigmas,
    #[error("the assembled matrix U is singular")]
    SingularU,
    #[error("line does not meet the open cube")]
    NoIntersection,
    #[error("base point is not strictly interior to the cube")]
    NotInterior,
    #[error("method unavailable: {0}")]
    MethodUnavailable(&'static str),
    #[error("point source covers radius {covered} but the requested boxes need {needed}")]
    SourceTooSmall { covered: f64, needed: f64 },
    #[error("point is not generated by the kernel lattice")]
    LambdaNotInSet,
    #[error("integer overflow while scaling exact data")]
    IntegerOverflow,
}

pub type Result<T> = std::result::Result<T, Error>;
