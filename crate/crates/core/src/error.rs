use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{name} / h = {ratio} is not an integer")]
    NonIntegerGrid { name: &'static str, ratio: f64 },

    #[error("invalid initial data at x = {x}: {reason}")]
    InvalidInitialData { x: f64, reason: String },

    #[error("singular tridiagonal system: pivot {pivot:e} at row {row}")]
    SingularSystem { row: usize, pivot: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("degenerate coefficient alpha[{cell}] = {value} on the tumour domain")]
    DegenerateCoefficient { cell: usize, value: f64 },

    #[error("tumour reached the bounding box: alpha[{cell}] = {value} is above threshold")]
    DomainSaturated { cell: usize, value: f64 },

    #[error("oxygen value {value} at node {node} leaves [0, 1]")]
    MaximumPrincipleViolated { node: usize, value: f64 },

    #[error("existence horizon precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("CFL condition not satisfied: ratio {ratio} outside [{lower}, {upper}] or delta {delta} >= {delta_cap}")]
    CflInfeasible {
        ratio: f64,
        lower: f64,
        upper: f64,
        delta: f64,
        delta_cap: f64,
    },

    #[error("step {step}: {source}")]
    AtStep {
        step: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at_step(self, step: usize) -> Self {
        match self {
            e @ Error::AtStep { .. } => e,
            e => Error::AtStep {
                step,
                source: Box::new(e),
            },
        }
    }

    /// Strips any step annotation.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtStep { source, .. } => source.root(),
            e => e,
        }
    }
}
