//! Exact scalar field and dense linear algebra over `ℚ(i)`.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{ExactMatrix, Vector};
pub use scalar::{GaussianRational, ParseScalarError};
pub use subspace::{induced_map, induced_quotient_map, Quotient, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("vector {vector:?} violates containment in {context}")]
    NotContained { vector: Vector, context: &'static str },
}

/// Rank of `g ∘ f` is zero and `rank f + rank g = dim` of the middle space.
pub fn is_exact_at(incoming: &ExactMatrix, outgoing: &ExactMatrix, middle_dim: usize) -> bool {
    if incoming.rows() != middle_dim || outgoing.cols() != middle_dim {
        return false;
    }
    outgoing.mul(incoming).is_zero() && incoming.rank() + outgoing.rank() == middle_dim
}
