use thiserror::Error;

pub type Result<T> = std::result::Result<T, TopoError>;

#[derive(Debug, Error)]
pub enum TopoError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("axis {axis} out of range for a {dim}-dimensional grid")]
    AxisOutOfRange { axis: usize, dim: usize },
    #[error("shape {len} along axis {axis} is too small for the stencil (need at least {min})")]
    StencilTooLarge { axis: usize, len: usize, min: usize },
    #[error("expected a {expected}-dimensional grid, got {found}")]
    WrongDimension { expected: String, found: usize },
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("component count mismatch: expected {expected}, found {found}")]
    ComponentMismatch { expected: usize, found: usize },
    #[error("operation needs a boundary, but the grid is periodic")]
    PeriodicGrid,
    #[error("group field is not constant on the open boundary (deviation {deviation:e})")]
    NonConstantBoundary { deviation: f64 },
    #[error("non-Abelian potential carries no structure constants")]
    MissingAlgebra,
    #[error("analytic mode requested but no exact gradients were supplied")]
    MissingGradients,
    #[error("commutator [X_{a}, X_{b}] leaves the generator span (residual {residual:e})")]
    ClosureFailure { a: usize, b: usize, residual: f64 },
    #[error("invalid Lie algebra: {0}")]
    InvalidAlgebra(String),
    #[error("generator labels do not partition the algebra: {0}")]
    BadPartition(String),
    #[error("pair is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("field file format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
