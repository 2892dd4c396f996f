use thiserror::Error;

/// Errors raised by the grid, solver and phase-shift routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FedvrError {
    #[error("invalid grid order {order}: at least {min} Lobatto points are required")]
    InvalidOrder { order: usize, min: usize },

    #[error("index {index} out of range for a grid of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("shape mismatch: expected {expected} samples, got {got}")]
    Shape { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(
        "singular reduced system (pivot ratio {ratio:.3e}); the partition is resonant, \
         try a different partition size"
    )]
    SingularSystem { ratio: f64 },

    #[error("partition {partition}: {source}")]
    InPartition {
        partition: usize,
        #[source]
        source: Box<FedvrError>,
    },

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("degenerate asymptotic match: value and derivative both vanish at r = {r}")]
    DegenerateMatch { r: f64 },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("step size {h} fm too large: {reason}")]
    StepTooLarge { h: f64, reason: String },

    #[error("unstable Numerov step at r = {r}: 1 + h^2 f/12 vanishes")]
    StepInstability { r: f64 },

    #[error("potential table: {0}")]
    Table(String),
}

impl FedvrError {
    pub(crate) fn in_partition(self, partition: usize) -> Self {
        FedvrError::InPartition {
            partition,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, FedvrError>;
