use std::fmt;

use thiserror::Error;

/// Reason a vertex list does not describe a simple polygon.
///
/// Indices are 0-based. Edge `k` runs from vertex `k` to vertex `k + 1`
/// (wrapping to vertex 0 after the last one).
#[derive(Debug, Clone, PartialEq)]
pub enum Defect {
    TooFewVertices { count: usize },
    NonFinite { index: usize },
    DuplicateVertex { index: usize },
    EdgesIntersect { first: usize, second: usize },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::TooFewVertices { count } => {
                write!(f, "need at least 3 vertices, got {count}")
            }
            Defect::NonFinite { index } => write!(f, "vertex {index} is not finite"),
            Defect::DuplicateVertex { index } => {
                write!(
                    f,
                    "duplicate vertex: vertex {index} coincides with its successor"
                )
            }
            Defect::EdgesIntersect { first, second } => {
                write!(f, "edges {first} and {second} intersect")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(Defect),

    #[error("invalid polyhedron: {0}")]
    InvalidPolyhedron(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("outside the asymptotic regime: {0}")]
    Regime(String),

    #[error("quadrature did not reach tolerance: estimates {coarse:e} and {fine:e} differ")]
    QuadratureFailed { coarse: f64, fine: f64 },

    #[error("moment relations inconsistent at total order {order}: residual {residual:e} exceeds {tolerance:e}")]
    InconsistentMoments {
        order: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("moment ({a}, {b}) is not in the table")]
    MissingMoment { a: usize, b: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
