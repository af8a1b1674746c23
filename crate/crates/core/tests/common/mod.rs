#![allow(dead_code)]

use beacon_iar::geom::{clip_convex, HalfPlane, Point2};
use beacon_iar::iar::IarResult;
use beacon_iar::SimplePolygon;
use geo::{Area, Coord, LineString, Polygon, TriangulateEarcut};

/// Triangles of a simple ring, from geo's ear clipping.
pub fn triangles(ring: &[Point2]) -> Vec<[Point2; 3]> {
    let ls: Vec<Coord<f64>> = ring.iter().map(|v| Coord { x: v.x, y: v.y }).collect();
    let poly = Polygon::new(LineString::from(ls), vec![]);
    poly.earcut_triangles()
        .into_iter()
        .map(|t| {
            let [a, b, c] = [t.v1(), t.v2(), t.v3()].map(|c| Point2::new(c.x, c.y));
            if (b - a).cross(c - a) < 0.0 {
                [a, c, b]
            } else {
                [a, b, c]
            }
        })
        .collect()
}

fn bbox(t: &[Point2]) -> (Point2, Point2) {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in t {
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (lo, hi)
}

fn ring_area(r: &[Point2]) -> f64 {
    let ls: Vec<Coord<f64>> = r.iter().map(|v| Coord { x: v.x, y: v.y }).collect();
    Polygon::new(LineString::from(ls), vec![]).unsigned_area()
}

/// Area of the intersection of two unions of simple rings, by pairwise triangle
/// clipping.
pub fn intersection_area(a: &[Vec<Point2>], b: &[Vec<Point2>]) -> f64 {
    let ta: Vec<[Point2; 3]> = a.iter().flat_map(|r| triangles(r)).collect();
    let tb: Vec<[Point2; 3]> = b.iter().flat_map(|r| triangles(r)).collect();
    let boxes: Vec<(Point2, Point2)> = tb.iter().map(|t| bbox(t)).collect();
    let mut total = 0.0;
    for t in &ta {
        let (lo, hi) = bbox(t);
        for (s, (slo, shi)) in tb.iter().zip(&boxes) {
            if shi.x < lo.x || slo.x > hi.x || shi.y < lo.y || slo.y > hi.y {
                continue;
            }
            let mut cur = t.to_vec();
            for k in 0..3 {
                match HalfPlane::left_of(s[k], s[(k + 1) % 3]) {
                    Ok(h) => cur = clip_convex(&cur, &h, 0.0),
                    Err(_) => cur.clear(),
                }
                if cur.len() < 3 {
                    break;
                }
            }
            if cur.len() >= 3 {
                total += ring_area(&cur);
            }
        }
    }
    total
}

pub fn rings(r: &IarResult) -> Vec<Vec<Point2>> {
    r.components.iter().map(|c| c.vertices().to_vec()).collect()
}

/// Symmetric-difference area of two unions of rings.
pub fn sym_diff_area(a: &[Vec<Point2>], b: &[Vec<Point2>]) -> f64 {
    let aa: f64 = a.iter().map(|r| ring_area(r)).sum();
    let ab: f64 = b.iter().map(|r| ring_area(r)).sum();
    (aa + ab - 2.0 * intersection_area(a, b)).max(0.0)
}

pub fn sym_diff_results(a: &IarResult, b: &IarResult) -> f64 {
    sym_diff_area(&rings(a), &rings(b))
}

pub fn sym_diff_polygon(a: &IarResult, p: &SimplePolygon) -> f64 {
    sym_diff_area(&rings(a), &[p.vertices().to_vec()])
}
