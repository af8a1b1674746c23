//! Beacon attraction in simple polygons: trajectories, shortest-path maps and
//! inverse attraction regions.

pub mod attraction;
pub mod clip;
pub mod error;
pub mod fixtures;
pub mod generators;
pub mod iar;
pub mod geom;
pub mod polygon;
pub mod shortest_paths;

pub use error::{Error, Result};
pub use geom::{HalfPlane, Orientation, Point2, Rect, Tolerance, Wedge};
pub use polygon::{BoundaryPoint, Chord, Containment, SimplePolygon, SubpolygonRef};
