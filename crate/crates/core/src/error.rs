//! Error types shared across the library.

use thiserror::Error;

/// Errors from geometry, material, and linear-algebra building blocks.
#[derive(Debug, Clone, Error)]
pub enum CoreError {
    #[error("invalid material parameters: {0}")]
    InvalidMaterial(String),

    #[error("unsupported spline degree {0} (supported: 1..=3)")]
    UnsupportedDegree(usize),

    #[error("unsupported quadrature order {0} (supported: 1..=5)")]
    UnsupportedQuadrature(usize),

    #[error("degenerate surface geometry: {0}")]
    DegenerateGeometry(String),

    #[error("singular matrix: zero pivot at row {index}")]
    SingularMatrix { index: usize },

    #[error("model validation failed: {0}")]
    InvalidModel(String),
}
