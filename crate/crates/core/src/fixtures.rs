//! Small named polygons used throughout the tests and the CLI.

use crate::geom::Point2;
use crate::polygon::SimplePolygon;

pub fn p(x: f64, y: f64) -> Point2 {
    Point2::new(x, y)
}

/// The square `[0,4]^2`.
pub fn square() -> SimplePolygon {
    SimplePolygon::new(vec![p(0., 0.), p(4., 0.), p(4., 4.), p(0., 4.)]).expect("valid fixture")
}

/// An 8x6 rectangle with a triangular notch cut in from the left wall; its tip `(3,3)`
/// is the only reflex vertex.
pub fn spike6() -> SimplePolygon {
    SimplePolygon::new(vec![
        p(0., 0.),
        p(8., 0.),
        p(8., 6.),
        p(0., 6.),
        p(0., 4.),
        p(3., 3.),
        p(0., 2.),
    ])
    .expect("valid fixture")
}

/// The square `[0,4]^2` with the quadrant `[0,2]x[2,4]` removed.
pub fn l_polygon() -> SimplePolygon {
    SimplePolygon::new(vec![p(0., 0.), p(4., 0.), p(4., 4.), p(2., 4.), p(2., 2.), p(0., 2.)])
        .expect("valid fixture")
}

/// Looks up a fixture by name.
pub fn by_name(name: &str) -> Option<SimplePolygon> {
    match name {
        "square" => Some(square()),
        "spike6" => Some(spike6()),
        "l-polygon" | "l_polygon" => Some(l_polygon()),
        _ => None,
    }
}
