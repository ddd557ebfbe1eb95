use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A matrix factorization could not be carried out.
    #[error("decomposition failure in {op}: {reason}")]
    Decomposition { op: &'static str, reason: String },

    /// A factorization failed partway through a cocycle run.
    #[error("decomposition failure at step {step} of {op}: {reason}")]
    CocycleStep {
        op: &'static str,
        step: usize,
        reason: String,
    },

    /// Input violated a documented precondition.
    #[error("invalid input for {op}: {reason}")]
    InvalidInput { op: &'static str, reason: String },

    /// Two objects with incompatible ranks/dimensions were combined.
    #[error("rank mismatch in {op}: expected {expected}, got {got}")]
    RankMismatch {
        op: &'static str,
        expected: usize,
        got: usize,
    },

    /// Weyl group too large to enumerate.
    #[error("Weyl group of order {order} exceeds enumeration limit {limit}")]
    GroupTooLarge { order: u128, limit: u128 },

    /// An epsilon-chain failed validation.
    #[error("invalid chain: jump {jump} has flag distance {distance:.3e} (epsilon {epsilon:.3e}) and base offset {base_offset}")]
    InvalidChain {
        jump: usize,
        distance: f64,
        epsilon: f64,
        base_offset: usize,
    },

    /// Singular-value spread exceeded the representable range.
    #[error("rank collapse in {op} at step {step}: log-singular-value spread {spread:.3e}; try a shorter horizon")]
    RankCollapse {
        op: &'static str,
        step: usize,
        spread: f64,
    },

    /// A spectrum operation was asked to work on an empty cloud.
    #[error("empty spectrum cloud in {op}")]
    EmptyCloud { op: &'static str },
}

impl Error {
    pub(crate) fn decomposition(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Decomposition {
            op,
            reason: reason.into(),
        }
    }

    pub(crate) fn invalid(op: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            op,
            reason: reason.into(),
        }
    }
}
