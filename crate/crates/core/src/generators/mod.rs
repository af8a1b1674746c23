//! Instance generators: random simple and convex polygons, the zigzag corridor family
//! with its lower-envelope oracle, and comb polygons with many attraction components.

mod comb;
mod random;
mod zigzag;

pub use comb::{comb_layout, COMB_NECK, comb_polygon, comb_template, oracle_component_count, CombInstance, CombTemplate};
pub use random::{convex_polygon, random_interior_point, random_polygon};
pub use zigzag::{
    lower_envelope, tangent_lines, zigzag_from_k, zigzag_polygon, Envelope, LineSpec, ZigzagInstance, DEFAULT_EPS_SLOPE,
};
