//! Error type shared across the crate. Structural problems (malformed input)
//! are kept distinct from mathematical failures (axiom or admissibility
//! violations) so the CLI can map them to different exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HyperError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parameter out of range: {0}")]
    ParameterRange(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("subset not closed: product of elements {i} and {j} escapes through element {k}")]
    NotClosed { i: usize, j: usize, k: usize },
    #[error("quotient convolution ill-defined: {0}")]
    QuotientIllDefined(String),
    #[error("axiom failure: {0}")]
    AxiomError(String),
    #[error("eigen solver failed to separate joint eigenspaces after {retries} retries")]
    Degeneracy { retries: usize },
    #[error("value failed to snap to a rational: {0}")]
    SnapFailure(String),
    #[error("negative structure constant at ({i},{j})->{k}: {value}")]
    NegativeStructureConstant { i: usize, j: usize, k: usize, value: f64 },
    #[error("function not in span of basis (residual {residual:.3e})")]
    NotInSpan { residual: f64 },
    #[error("negative coefficient where nonnegativity is required: index {index}, value {value}")]
    NegativeCoefficient { index: usize, value: f64 },
    #[error("non-integer multiplicity {value} for constituent {index}")]
    NonIntegerMultiplicity { index: usize, value: f64 },
    #[error("induced representation has empty constraint space")]
    EmptyConstraintSpace,
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("hypergroup is not commutative where commutativity is required")]
    NotCommutative,
    #[error("regularity condition fails: {0}")]
    RegularityFailed(String),
    #[error("character decomposition failed: {0}")]
    Decomposition(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, HyperError>;
