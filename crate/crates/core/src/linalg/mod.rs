//! Exact dense linear algebra over ℚ, 𝔽_p and p-adically valued ℚ.
//!
//! Tensor products use the X-major lexicographic convention everywhere: the
//! basis vector `x_i ⊗ y_j` of `X ⊗ Y` sits at flat index `i·dim(Y) + j`.

mod echelon;
mod field;
mod matrix;
mod space;

use thiserror::Error;

pub use echelon::{cokernel, echelon, image, in_span, inverse, kernel, rank, solve, solve_factor, Cokernel, Echelon};
pub use field::{format_rational, Field, Scalar};
pub use matrix::LinearMap;
pub use space::SpaceObject;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{value} has no image in {field}")]
    NotInField { value: String, field: Field },
    #[error("cannot parse scalar {0:?}")]
    ScalarParse(String),
    #[error("cannot parse field descriptor {0:?} (expected q, fp:<p> or padic:<p>)")]
    FieldParse(String),
    #[error("rows of unequal length")]
    RaggedRows,
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("expected {expected} entries, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("no factorization exists: kernel condition fails")]
    NoSolution,
}
