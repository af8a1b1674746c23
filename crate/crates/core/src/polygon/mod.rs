//! Simple polygons: validation, containment, deadwedges, ray shooting,
//! chord splitting and triangulation.
//!
//! Boundary positions are expressed as a *boundary coordinate*
//! `s = edge + t` in `[0, n)`, where edge `i` runs from vertex `i` to vertex
//! `i + 1`. Vertex `i` has coordinate exactly `i`, so subpolygon membership
//! of a vertex is a circular interval test.

mod io;
mod triangulate;

pub use io::{format_coord, parse_polygon, parse_polygon_with_points, write_polygon};
pub use triangulate::{TriangulationMethod, Triangulation};

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{
    orthogonal_projection, ring_area, signed_line_dist, HalfPlane, Point2, Rect, Segment,
    Tolerance, Wedge,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Interior,
    Boundary,
    Exterior,
}

/// A validated simple polygon in counter-clockwise order.
#[derive(Debug, Clone)]
pub struct SimplePolygon {
    verts: Vec<Point2>,
    bbox: Rect,
    tol: Tolerance,
}

impl PartialEq for SimplePolygon {
    fn eq(&self, other: &Self) -> bool {
        self.verts == other.verts
    }
}

/// A point on the boundary, located on edge `edge` at parameter `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub edge: usize,
    pub t: f64,
    pub point: Point2,
}

impl BoundaryPoint {
    pub fn coord(&self) -> f64 {
        self.edge as f64 + self.t
    }

    /// The vertex index when the point sits exactly on a vertex.
    pub fn vertex(&self) -> Option<usize> {
        (self.t == 0.0).then_some(self.edge)
    }
}

/// A segment between two boundary points whose interior lies inside the polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chord {
    pub start: BoundaryPoint,
    pub end: BoundaryPoint,
}

impl Chord {
    pub fn segment(&self) -> Segment {
        Segment::new(self.start.point, self.end.point)
    }
}

/// One side of a chord: the boundary arc running counter-clockwise from `from` to `to`,
/// closed by the chord.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubpolygonRef {
    pub chord: Chord,
    pub from: BoundaryPoint,
    pub to: BoundaryPoint,
}

impl SubpolygonRef {
    /// Closed circular membership test for a boundary coordinate.
    pub fn contains_coord(&self, s: f64, n: usize) -> bool {
        arc_contains(self.from.coord(), self.to.coord(), s, n)
    }

    /// Membership of the point just after (`side > 0`) or just before (`side < 0`) the
    /// boundary coordinate `s`.
    pub fn contains_coord_side(&self, s: f64, side: i8, n: usize) -> bool {
        let (a, b) = (self.from.coord(), self.to.coord());
        if s == a {
            return side > 0 && a != b;
        }
        if s == b {
            return side < 0;
        }
        arc_contains(a, b, s, n)
    }

    pub fn contains_vertex(&self, i: usize, n: usize) -> bool {
        self.contains_coord(i as f64, n)
    }
}

/// Whether `s` lies on the closed CCW arc from `a` to `b` on a circle of length `n`.
pub fn arc_contains(a: f64, b: f64, s: f64, n: usize) -> bool {
    let len = arc_len(a, b, n);
    let off = arc_len(a, s, n);
    off <= len
}

/// CCW distance from `a` to `b` in boundary coordinates.
pub fn arc_len(a: f64, b: f64, n: usize) -> f64 {
    let d = b - a;
    if d >= 0.0 {
        d
    } else {
        d + n as f64
    }
}

/// Where a ray leaves the closed polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayExit {
    pub t: f64,
    pub at: BoundaryPoint,
}

impl SimplePolygon {
    /// Validates a vertex list; clockwise input is reversed.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        validate(vertices)
    }

    /// Builds a polygon without the simplicity check. The caller guarantees the
    /// vertices form a simple CCW ring.
    pub fn from_ccw_unchecked(verts: Vec<Point2>) -> Self {
        let bbox = Rect::from_points(verts.iter().copied())
            .unwrap_or(Rect::new(Point2::default(), Point2::default()));
        let tol = Tolerance::for_diameter(bbox.diameter());
        SimplePolygon { verts, bbox, tol }
    }

    pub fn with_tolerance(mut self, tol: Tolerance) -> Self {
        self.tol = tol;
        self
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.verts
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.verts[i % self.verts.len()]
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.verts.len()
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.verts.len() - 1) % self.verts.len()
    }

    pub fn edge(&self, i: usize) -> Segment {
        Segment::new(self.vertex(i), self.vertex(i + 1))
    }

    pub fn bbox(&self) -> Rect {
        self.bbox
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    pub fn eps(&self) -> f64 {
        self.tol.eps_geom
    }

    pub fn diameter(&self) -> f64 {
        self.bbox.diameter()
    }

    pub fn area(&self) -> f64 {
        ring_area(&self.verts)
    }

    /// Point at a boundary coordinate.
    pub fn point_at(&self, s: f64) -> Point2 {
        let n = self.len();
        let s = s.rem_euclid(n as f64);
        let e = (s.floor() as usize).min(n - 1);
        let t = s - e as f64;
        if t == 0.0 {
            self.verts[e]
        } else {
            self.vertex(e).lerp(self.vertex(e + 1), t)
        }
    }

    pub fn vertex_point(&self, i: usize) -> BoundaryPoint {
        BoundaryPoint { edge: i, t: 0.0, point: self.vertex(i) }
    }

    /// Boundary point on edge `edge` at parameter `t`, snapped to an endpoint when
    /// within tolerance.
    pub fn boundary_point(&self, edge: usize, t: f64) -> BoundaryPoint {
        let e = self.edge(edge);
        let len = e.length();
        let tt = t.clamp(0.0, 1.0);
        if tt * len <= self.eps() {
            return self.vertex_point(edge);
        }
        if (1.0 - tt) * len <= self.eps() {
            return self.vertex_point(self.next(edge));
        }
        BoundaryPoint { edge, t: tt, point: e.a.lerp(e.b, tt) }
    }

    /// Locates `q` on the boundary (within tolerance), preferring vertices.
    pub fn locate_on_boundary(&self, q: Point2) -> Option<BoundaryPoint> {
        let eps = self.eps();
        let mut best: Option<(f64, usize)> = None;
        for i in 0..self.len() {
            let d = self.edge(i).dist_to(q);
            if d <= eps && best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, i));
            }
        }
        let (_, i) = best?;
        let e = self.edge(i);
        let dir = e.b - e.a;
        let t = (q - e.a).dot(dir) / dir.dot(dir);
        Some(self.boundary_point(i, t))
    }

    /// Point-in-polygon with boundary snapping at `eps_geom`.
    pub fn contains(&self, q: Point2) -> Containment {
        let eps = self.eps();
        let n = self.len();
        let mut inside = false;
        for i in 0..n {
            let a = self.verts[i];
            let b = self.verts[(i + 1) % n];
            if Segment::new(a, b).dist_to(q) <= eps {
                return Containment::Boundary;
            }
            if (a.y > q.y) != (b.y > q.y) {
                let x = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if x > q.x {
                    inside = !inside;
                }
            }
        }
        if inside {
            Containment::Interior
        } else {
            Containment::Exterior
        }
    }

    pub fn contains_closed(&self, q: Point2) -> bool {
        self.contains(q) != Containment::Exterior
    }

    /// Distance from `q` to the polygon boundary.
    pub fn boundary_dist(&self, q: Point2) -> f64 {
        (0..self.len())
            .map(|i| self.edge(i).dist_to(q))
            .fold(f64::INFINITY, f64::min)
    }

    /// Interior angle at vertex `i` exceeds pi.
    pub fn is_reflex(&self, i: usize) -> bool {
        let (a, b, c) = (self.vertex(self.prev(i)), self.vertex(i), self.vertex(self.next(i)));
        (b - a).cross(c - b) < 0.0 && signed_line_dist(a, b, c).abs() > self.eps()
    }

    pub fn reflex_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_reflex(i)).collect()
    }

    /// The two deadwedge half-planes at a reflex vertex: `H_k` is bounded by the line
    /// through the vertex orthogonal to an incident edge and contains that edge. Index 0
    /// belongs to the edge towards the previous vertex, index 1 to the next vertex.
    pub fn deadwedge(&self, r: usize) -> Result<Wedge> {
        if !self.is_reflex(r) {
            return Err(Error::NotReflex(r));
        }
        let v = self.vertex(r);
        let h_prev = edge_halfplane(v, self.vertex(self.prev(r)))?;
        let h_next = edge_halfplane(v, self.vertex(self.next(r)))?;
        Ok(Wedge { apex: v, planes: [h_prev, h_next] })
    }

    /// CCW angle of `d` inside the interior wedge at vertex `i`, measured from the
    /// direction of the next edge, together with the wedge's total opening.
    pub fn wedge_angles(&self, i: usize, d: Point2) -> (f64, f64) {
        let v = self.vertex(i);
        let a = self.vertex(self.next(i)) - v;
        let b = self.vertex(self.prev(i)) - v;
        (ccw_angle(a, d), ccw_angle(a, b))
    }

    /// Whether direction `d` points into the closed interior wedge at vertex `i`.
    pub fn direction_enters_at_vertex(&self, i: usize, d: Point2) -> bool {
        let (ad, ab) = self.wedge_angles(i, d);
        const ANG: f64 = 1e-10;
        ad <= ab + ANG || ad >= 2.0 * PI - ANG
    }

    /// Whether direction `d` points strictly into the interior at vertex `i`.
    pub fn direction_strictly_inside_at_vertex(&self, i: usize, d: Point2, ang: f64) -> bool {
        let (ad, ab) = self.wedge_angles(i, d);
        ad > ang && ad < ab - ang
    }

    /// Whether direction `d` from a boundary point enters the closed polygon.
    pub fn direction_enters(&self, at: &BoundaryPoint, d: Point2) -> bool {
        match at.vertex() {
            Some(i) => self.direction_enters_at_vertex(i, d),
            None => {
                let e = self.edge(at.edge);
                let dir = (e.b - e.a).normalized().unwrap_or_default();
                let dn = d.normalized().unwrap_or_default();
                dir.cross(dn) >= -1e-10
            }
        }
    }

    /// First point where the ray `origin + t*dir` (`0 < t <= max_t`) leaves the closed
    /// polygon. Passing exactly through a reflex vertex or running along an edge does
    /// not count as leaving. `dir` must have unit length.
    pub fn first_exit(&self, origin: Point2, dir: Point2, max_t: f64) -> Option<RayExit> {
        let eps = self.eps();
        let n = self.len();
        let sd: Vec<f64> = self.verts.iter().map(|&v| dir.cross(v - origin)).collect();
        let tv: Vec<f64> = self.verts.iter().map(|&v| dir.dot(v - origin)).collect();
        let sgn = |x: f64| -> i8 {
            if x > eps {
                1
            } else if x < -eps {
                -1
            } else {
                0
            }
        };
        let mut best: Option<RayExit> = None;
        let consider = |t: f64, at: BoundaryPoint, best: &mut Option<RayExit>| {
            if t > eps && t <= max_t + eps && best.is_none_or(|b| t < b.t) {
                *best = Some(RayExit { t, at });
            }
        };
        for i in 0..n {
            let j = (i + 1) % n;
            let (si, sj) = (sgn(sd[i]), sgn(sd[j]));
            if si != 0 && sj != 0 && si != sj {
                let e = self.verts[j] - self.verts[i];
                if e.cross(dir) >= 0.0 {
                    // entering crossing
                    continue;
                }
                let f = sd[i] / (sd[i] - sd[j]);
                let t = tv[i] + (tv[j] - tv[i]) * f;
                if t > eps && t <= max_t + eps {
                    let bp = self.boundary_point(i, f);
                    consider(t, bp, &mut best);
                }
            }
            if si == 0 && tv[i] > eps && tv[i] <= max_t + eps && !self.direction_enters_at_vertex(i, dir) {
                consider(tv[i], self.vertex_point(i), &mut best);
            }
        }
        best
    }

    /// First boundary point hit by a ray from a point of the closed polygon.
    pub fn ray_shoot(&self, origin: Point2, dir: Point2) -> Result<BoundaryPoint> {
        let d = dir.normalized().ok_or(Error::DegenerateInput("zero ray direction"))?;
        match self.contains(origin) {
            Containment::Exterior => return Err(Error::PointOutsidePolygon(origin)),
            Containment::Boundary => {
                let at = self.locate_on_boundary(origin).expect("boundary point");
                if !self.direction_enters(&at, d) {
                    return Err(Error::RayExitsImmediately(origin));
                }
            }
            Containment::Interior => {}
        }
        let reach = 4.0 * self.diameter() + origin.dist(self.bbox.min) + 1.0;
        self.first_exit(origin, d, reach)
            .map(|e| e.at)
            .ok_or(Error::RayExitsImmediately(origin))
    }

    /// Whether the segment `ab` lies inside the closed polygon.
    pub fn sees(&self, a: Point2, b: Point2) -> bool {
        if !self.contains_closed(a) || !self.contains_closed(b) {
            return false;
        }
        let len = a.dist(b);
        if len <= self.eps() {
            return true;
        }
        let d = (b - a) * (1.0 / len);
        if let Some(at) = self.locate_on_boundary(a) {
            if !self.direction_enters(&at, d) {
                return false;
            }
        }
        match self.first_exit(a, d, len) {
            None => true,
            Some(e) => e.t >= len - self.eps(),
        }
    }

    /// Splits the polygon along a chord into its two sides.
    pub fn split(&self, chord: &Chord) -> Result<(SubpolygonRef, SubpolygonRef)> {
        let seg = chord.segment();
        if seg.length() <= self.eps() {
            return Err(Error::ChordExitsPolygon);
        }
        if !self.sees(seg.a, seg.b) {
            return Err(Error::ChordExitsPolygon);
        }
        Ok(self.split_unchecked(chord))
    }

    pub fn split_unchecked(&self, chord: &Chord) -> (SubpolygonRef, SubpolygonRef) {
        (
            SubpolygonRef { chord: *chord, from: chord.start, to: chord.end },
            SubpolygonRef { chord: *chord, from: chord.end, to: chord.start },
        )
    }

    /// Vertex ring of a subpolygon side (CCW).
    pub fn subpolygon_ring(&self, r: &SubpolygonRef) -> Vec<Point2> {
        let n = self.len();
        let (a, b) = (r.from.coord(), r.to.coord());
        let mut ring = vec![r.from.point];
        let first = r.from.edge + 1;
        let len = arc_len(a, b, n);
        let mut k = first;
        loop {
            let idx = k % n;
            let off = arc_len(a, idx as f64, n);
            if off >= len || off == 0.0 {
                break;
            }
            ring.push(self.verts[idx]);
            k += 1;
        }
        if r.to.point.dist(*ring.last().unwrap()) > 0.0 {
            ring.push(r.to.point);
        }
        ring
    }

    pub fn materialize(&self, r: &SubpolygonRef) -> SimplePolygon {
        SimplePolygon::from_ccw_unchecked(self.subpolygon_ring(r)).with_tolerance(self.tol)
    }

    /// Ray from vertex `v` along `d`, walking `tri` when possible.
    pub fn shoot_from_vertex(&self, tri: &Triangulation, v: usize, d: Point2) -> Result<BoundaryPoint> {
        let d = d.normalized().ok_or(Error::DegenerateInput("zero ray direction"))?;
        if !self.direction_enters_at_vertex(v, d) {
            return Err(Error::RayExitsImmediately(self.vertex(v)));
        }
        match tri.shoot_from_vertex(self, v, d) {
            Some(bp) => Ok(bp),
            None => self.ray_shoot(self.vertex(v), d),
        }
    }

    /// For a chord from vertex `v` to `end`, the side whose interior near `v` does not
    /// contain direction `q_dir`.
    pub fn piece_away_from(&self, v: usize, end: BoundaryPoint, q_dir: Point2) -> SubpolygonRef {
        let o = self.vertex(v);
        let a = self.vertex(self.next(v)) - o;
        let chord = Chord { start: self.vertex_point(v), end };
        let near_q_is_forward = ccw_angle(a, q_dir) < ccw_angle(a, end.point - o);
        if near_q_is_forward {
            SubpolygonRef { chord, from: end, to: chord.start }
        } else {
            SubpolygonRef { chord, from: chord.start, to: end }
        }
    }

    /// Triangulates with the default (monotone sweep) method.
    pub fn triangulate(&self) -> Triangulation {
        Triangulation::new(self, TriangulationMethod::MonotoneSweep)
    }
}

/// Half-plane bounded by the line through `v` orthogonal to `v -> w`, containing `w`.
pub(crate) fn edge_halfplane(v: Point2, w: Point2) -> Result<HalfPlane> {
    // (q - v) . (w - v) >= 0
    HalfPlane::with_outward_normal(v, v - w)
}

/// CCW angle from `a` to `b` in `[0, 2pi)`.
pub fn ccw_angle(a: Point2, b: Point2) -> f64 {
    let ang = a.cross(b).atan2(a.dot(b));
    if ang < 0.0 {
        ang + 2.0 * PI
    } else {
        ang
    }
}

/// Validates and orients a vertex list.
pub fn validate(mut vertices: Vec<Point2>) -> Result<SimplePolygon> {
    let n = vertices.len();
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    if vertices.iter().any(|p| !p.is_finite()) {
        return Err(Error::DegenerateInput("non-finite coordinate"));
    }
    let mut flipped = false;
    if ring_area(&vertices) < 0.0 {
        vertices.reverse();
        flipped = true;
    }
    let poly = SimplePolygon::from_ccw_unchecked(vertices);
    let eps = poly.eps();
    let map = |i: usize| if flipped { n - 1 - i } else { i };

    // Duplicates: sort by x then compare neighbours within a tolerance window.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| poly.verts[a].x.total_cmp(&poly.verts[b].x));
    for (k, &i) in order.iter().enumerate() {
        for &j in order[k + 1..].iter() {
            if poly.verts[j].x - poly.verts[i].x > eps {
                break;
            }
            if poly.verts[i].dist(poly.verts[j]) <= eps {
                let (a, b) = (map(i).min(map(j)), map(i).max(map(j)));
                return Err(Error::DuplicateVertex(a, b));
            }
        }
    }
    if let Some((i, j)) = find_crossing(&poly) {
        let (a, b) = (map(i), map(j));
        return Err(Error::SelfIntersecting(a.min(b), a.max(b)));
    }
    if poly.area() <= eps * eps {
        return Err(Error::DegenerateInput("polygon has zero area"));
    }
    Ok(poly)
}

/// Finds a pair of intersecting non-adjacent edges (or overlapping adjacent ones),
/// bucketing edges on a uniform grid.
pub(crate) fn find_crossing(poly: &SimplePolygon) -> Option<(usize, usize)> {
    let n = poly.len();
    let eps = poly.eps();
    let bb = poly.bbox.expanded(eps);
    let cells = ((n as f64).sqrt().ceil() as usize).clamp(1, 1024);
    let cw = (bb.max.x - bb.min.x).max(eps) / cells as f64;
    let ch = (bb.max.y - bb.min.y).max(eps) / cells as f64;
    let cell_of = |p: Point2| -> (usize, usize) {
        let cx = (((p.x - bb.min.x) / cw) as usize).min(cells - 1);
        let cy = (((p.y - bb.min.y) / ch) as usize).min(cells - 1);
        (cx, cy)
    };
    let mut grid: Vec<Vec<usize>> = vec![Vec::new(); cells * cells];
    let mut big = Vec::new();
    let limit = (4 * cells).max(16);
    for i in 0..n {
        let e = poly.edge(i);
        let (x0, y0) = cell_of(Point2::new(e.a.x.min(e.b.x) - eps, e.a.y.min(e.b.y) - eps));
        let (x1, y1) = cell_of(Point2::new(e.a.x.max(e.b.x) + eps, e.a.y.max(e.b.y) + eps));
        if (x1 - x0 + 1) * (y1 - y0 + 1) > limit {
            big.push(i);
            continue;
        }
        for cx in x0..=x1 {
            for cy in y0..=y1 {
                grid[cy * cells + cx].push(i);
            }
        }
    }
    let check = |i: usize, j: usize| -> bool {
        if i == j {
            return false;
        }
        edges_conflict(poly, i, j, eps)
    };
    for i in big.iter().copied() {
        for j in 0..n {
            if check(i, j) {
                return Some((i.min(j), i.max(j)));
            }
        }
    }
    for bucket in &grid {
        for (a, &i) in bucket.iter().enumerate() {
            for &j in &bucket[a + 1..] {
                if check(i, j) {
                    return Some((i.min(j), i.max(j)));
                }
            }
        }
    }
    None
}

fn edges_conflict(poly: &SimplePolygon, i: usize, j: usize, eps: f64) -> bool {
    use crate::geom::{segment_intersection, SegmentIntersection};
    let n = poly.len();
    let (ei, ej) = (poly.edge(i), poly.edge(j));
    let adjacent = (i + 1) % n == j || (j + 1) % n == i;
    match segment_intersection(&ei, &ej, eps) {
        SegmentIntersection::None => false,
        SegmentIntersection::Point(_) => !adjacent,
        SegmentIntersection::Overlap(s) => {
            // adjacent edges folding back onto each other
            s.length() > eps || !adjacent
        }
    }
}

/// Deadwedge-style half-plane for an arbitrary boundary vertex pair, used by callers that
/// already know the edge they need.
pub fn orthogonal_halfplane(v: Point2, w: Point2) -> Result<HalfPlane> {
    edge_halfplane(v, w)
}

/// Projection of `q` on the supporting line of edge `i`.
pub fn edge_projection(poly: &SimplePolygon, i: usize, q: Point2) -> Point2 {
    let e = poly.edge(i);
    orthogonal_projection(q, e.a, e.b - e.a).unwrap_or(e.a)
}

#[cfg(test)]
pub(crate) mod fixtures {
    pub use crate::fixtures::*;
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn validate_examples() {
        assert_eq!(square().len(), 4);
        let bow = SimplePolygon::new(vec![p(0., 0.), p(2., 2.), p(2., 0.), p(0., 2.)]);
        assert!(matches!(bow, Err(Error::SelfIntersecting(_, _))));
        assert_eq!(spike6().len(), 7);
        assert!(matches!(SimplePolygon::new(vec![p(0., 0.), p(1., 0.)]), Err(Error::TooFewVertices(2))));
        let dup = SimplePolygon::new(vec![p(0., 0.), p(4., 0.), p(4., 0.), p(0., 4.)]);
        assert!(matches!(dup, Err(Error::DuplicateVertex(1, 2))));
    }

    #[test]
    fn validate_reverses_clockwise() {
        let cw = SimplePolygon::new(vec![p(0., 0.), p(0., 4.), p(4., 4.), p(4., 0.)]).unwrap();
        assert!(cw.area() > 0.0);
        assert_eq!(cw.vertex(0), p(4., 0.));
    }

    #[test]
    fn spike6_brute_force_pairs() {
        // no two non-adjacent edges of SPIKE6 meet
        use crate::geom::{segment_intersection, SegmentIntersection};
        let s = spike6();
        let n = s.len();
        for i in 0..n {
            for j in i + 1..n {
                if (i + 1) % n == j || (j + 1) % n == i {
                    continue;
                }
                assert_eq!(segment_intersection(&s.edge(i), &s.edge(j), 1e-12), SegmentIntersection::None);
            }
        }
    }

    #[test]
    fn contains_examples() {
        let s = spike6();
        assert_eq!(s.contains(p(1., 3.)), Containment::Exterior);
        assert_eq!(s.contains(p(6., 1.)), Containment::Interior);
        assert_eq!(s.contains(p(3., 3.)), Containment::Boundary);
    }

    #[test]
    fn reflex_examples() {
        let s = spike6();
        assert!(s.is_reflex(5));
        assert!(!s.is_reflex(4));
        let q = square();
        assert!((0..4).all(|i| !q.is_reflex(i)));
    }

    #[test]
    fn deadwedge_examples() {
        let l = l_polygon();
        let w = l.deadwedge(4).unwrap();
        for (q, inside) in [(p(1., 3.), true), (p(3., 3.), false), (p(1., 1.), false), (p(2., 2.), true)] {
            assert_eq!(w.contains(q, 1e-12), inside, "{q}");
        }
        // exact half-planes: x <= 2 and y >= 2
        let s = spike6();
        let w = s.deadwedge(5).unwrap();
        for k in 0..200 {
            let q = p(k as f64 * 0.05 - 1.0, (k * 37 % 200) as f64 * 0.04);
            let expect = q.y >= 3. * q.x - 6. - 1e-12 && 3. * q.x + q.y <= 12. + 1e-12;
            assert_eq!(w.contains(q, 1e-12), expect, "{q}");
        }
        assert!(matches!(s.deadwedge(4), Err(Error::NotReflex(4))));
    }

    #[test]
    fn deadwedge_boundaries_pass_through_apex() {
        let s = spike6();
        let w = s.deadwedge(5).unwrap();
        for h in &w.planes {
            assert!(h.signed_dist(w.apex).abs() < 1e-12);
        }
        // far endpoints of the incident edges are strictly inside their own half-plane
        assert!(w.planes[0].contains_strictly(s.vertex(4), 1e-9));
        assert!(w.planes[1].contains_strictly(s.vertex(6), 1e-9));
    }

    #[test]
    fn ray_shoot_examples() {
        let s = spike6();
        let hit = s.ray_shoot(p(3., 3.), p(3., 1.)).unwrap();
        assert_eq!(hit.edge, 1);
        assert!(hit.point.dist(p(8., 14. / 3.)) < 1e-12);
        let hit = square().ray_shoot(p(2., 2.), p(1., 0.)).unwrap();
        assert!(hit.point.dist(p(4., 2.)) < 1e-12);
        let hit = s.ray_shoot(p(3., 3.), p(1., 1.)).unwrap();
        assert_eq!(hit.edge, 2);
        assert!(hit.point.dist(p(6., 6.)) < 1e-12);
        assert!(matches!(s.ray_shoot(p(3., 3.), p(-1., 0.)), Err(Error::RayExitsImmediately(_))));
        assert!(matches!(s.ray_shoot(p(-1., 3.), p(1., 0.)), Err(Error::PointOutsidePolygon(_))));
    }

    #[test]
    fn split_examples() {
        let s = spike6();
        let start = s.vertex_point(5);
        let end = s.boundary_point(1, 14. / 3. / 6.);
        let (a, b) = s.split(&Chord { start, end }).unwrap();
        // side from the chord end CCW back to the tip holds (0,6) and (0,4)
        let (top, bottom) = if b.contains_vertex(3, 7) { (b, a) } else { (a, b) };
        assert!(top.contains_vertex(3, 7) && top.contains_vertex(4, 7));
        assert!(bottom.contains_vertex(0, 7) && bottom.contains_vertex(1, 7));
        assert!(!bottom.contains_vertex(3, 7));
        let pa = s.materialize(&top);
        let pb = s.materialize(&bottom);
        assert_eq!(pa.contains(p(0.5, 5.)), Containment::Interior);
        assert_eq!(pb.contains(p(6., 1.)), Containment::Interior);
        assert!((pa.area() + pb.area() - s.area()).abs() < 1e-9 * s.area());

        let q = square();
        let (a, b) = q.split(&Chord { start: q.vertex_point(0), end: q.vertex_point(2) }).unwrap();
        assert_eq!(q.materialize(&a).len(), 3);
        assert_eq!(q.materialize(&b).len(), 3);

        let bad = Chord { start: s.vertex_point(4), end: s.vertex_point(6) };
        assert!(matches!(s.split(&bad), Err(Error::ChordExitsPolygon)));
    }

    #[test]
    fn sees_examples() {
        let s = spike6();
        assert!(s.sees(p(6., 1.), p(0.5, 5.)));
        assert!(!s.sees(p(0.5, 0.5), p(0.3, 4.5)));
        let q = square();
        assert!(q.sees(p(0., 0.), p(4., 4.)));
        assert!(q.sees(p(0., 0.), p(4., 0.)));
        // grazing along an edge and through the spike tip
        assert!(s.sees(p(0., 4.), p(3., 3.)));
        assert!(s.sees(p(0., 1.5), p(6., 4.5)) == s.sees(p(6., 4.5), p(0., 1.5)));
    }
}
