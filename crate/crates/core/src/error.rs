use thiserror::Error;

use crate::geom::Point2;

/// Errors produced by the geometric kernel and the algorithms built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),

    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("duplicate vertex at indices {0} and {1}")]
    DuplicateVertex(usize, usize),

    #[error("edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),

    #[error("vertex {0} is not reflex")]
    NotReflex(usize),

    #[error("ray leaves the polygon immediately at {0}")]
    RayExitsImmediately(Point2),

    #[error("chord leaves the polygon")]
    ChordExitsPolygon,

    #[error("point {0} lies outside the polygon")]
    PointOutsidePolygon(Point2),

    #[error("simulation exceeded its budget of {0} events")]
    BudgetExceeded(usize),

    #[error("parent {0} lies on a deadwedge boundary of its child")]
    DegenerateOnBoundary(Point2),

    #[error("line slopes are too close to build corridors")]
    DegenerateSlopes,

    #[error("generated instance reached only {found} of {wanted} components")]
    CertificationFailed { wanted: usize, found: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
