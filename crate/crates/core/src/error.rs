use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ansatz has a node: {0}")]
    NodeDetected(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("x = {x} outside tabulated range [{lo}, {hi}]")]
    OutOfTable { x: f64, lo: f64, hi: f64 },

    #[error("|psi| = {psi:e} at x = {x} is below the node floor")]
    DivisionNearNode { x: f64, psi: f64 },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(f64),

    #[error("constraint pole: u1 * a = 1 makes u2 diverge")]
    ConstraintPole,

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("W does not decay at the domain edges: |W(-L)| = {left:e}, |W(L)| = {right:e}")]
    BoundaryNotDecayed { left: f64, right: f64 },

    #[error("energy must be positive, got {0}")]
    EnergyNonPositive(f64),

    #[error("potential is not flat at the grid edges: |V| = {0:e}")]
    EdgeNotFlat(f64),

    #[error("decay length 1/kappa = {decay_length} needs a domain of half-width {required}, which cannot be resolved")]
    DomainTooSmall { decay_length: f64, required: f64 },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
}
