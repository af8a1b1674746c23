//! Floating-point kernel: points, tolerant predicates, half-planes and
//! convex clipping.
//!
//! Every predicate takes an absolute tolerance. Polygons carry a
//! [`Tolerance`] scaled to their bounding box, and the algorithms pass it
//! down.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    #[inline]
    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    /// Counter-clockwise perpendicular.
    #[inline]
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Option<Point2> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(Point2::new(self.x / n, self.y / n))
        } else {
            None
        }
    }

    pub fn lerp(self, o: Point2, t: f64) -> Point2 {
        Point2::new(self.x + (o.x - self.x) * t, self.y + (o.y - self.y) * t)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Point2 {
    type Output = Point2;
    #[inline]
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    #[inline]
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    #[inline]
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    #[inline]
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// Snapping and termination tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Absolute distance below which two geometric objects are treated as touching.
    pub eps_geom: f64,
    /// Distance to the beacon at which a trajectory counts as arrived.
    pub eps_dist: f64,
}

impl Tolerance {
    pub fn new(eps_geom: f64, eps_dist: f64) -> Result<Self> {
        if !(eps_geom > 0.0 && eps_dist > 0.0 && eps_dist >= eps_geom) {
            return Err(Error::DegenerateInput(
                "tolerances must be positive with eps_dist >= eps_geom",
            ));
        }
        Ok(Tolerance { eps_geom, eps_dist })
    }

    /// Default policy: `1e-9` times the diameter for geometry, `1e-7` times the diameter
    /// for arrival.
    pub fn for_diameter(diameter: f64) -> Self {
        let d = if diameter > 0.0 && diameter.is_finite() { diameter } else { 1.0 };
        Tolerance { eps_geom: 1e-9 * d, eps_dist: 1e-7 * d }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Sign of `(b - a) x (c - a)`. Values within `eps_geom * scale` are collinear, where
/// `scale` is the largest coordinate magnitude among the inputs.
pub fn orientation(a: Point2, b: Point2, c: Point2, eps_geom: f64) -> Orientation {
    let v = (b - a).cross(c - a);
    let scale = [a.x, a.y, b.x, b.y, c.x, c.y]
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(1.0);
    if v.abs() <= eps_geom * scale {
        Orientation::Collinear
    } else if v > 0.0 {
        Orientation::CounterClockwise
    } else {
        Orientation::Clockwise
    }
}

/// Signed distance of `c` from the directed line `a -> b` (positive on the left).
/// Returns the plain cross product when `a == b`.
#[inline]
pub fn signed_line_dist(a: Point2, b: Point2, c: Point2) -> f64 {
    let d = b - a;
    let n = d.norm();
    let cr = d.cross(c - a);
    if n > 0.0 {
        cr / n
    } else {
        cr
    }
}

/// Side of `c` relative to the directed line `a -> b`: `1` left, `-1` right, `0` within `eps`.
#[inline]
pub fn side(a: Point2, b: Point2, c: Point2, eps: f64) -> i8 {
    let s = signed_line_dist(a, b, c);
    if s > eps {
        1
    } else if s < -eps {
        -1
    } else {
        0
    }
}

/// Orthogonal projection of `p` on the line through `a` with direction `d`.
pub fn orthogonal_projection(p: Point2, a: Point2, d: Point2) -> Result<Point2> {
    let d = d
        .normalized()
        .ok_or(Error::DegenerateInput("zero-length direction"))?;
    Ok(a + d * (p - a).dot(d))
}

/// Closed half-plane `{q : a*q.x + b*q.y <= c}` with a unit normal `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HalfPlane {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let n = a.hypot(b);
        if !(n > 0.0) || !n.is_finite() || !c.is_finite() {
            return Err(Error::DegenerateInput("half-plane normal is zero"));
        }
        Ok(HalfPlane { a: a / n, b: b / n, c: c / n })
    }

    /// Half-plane bounded by the line through `point` with the given outward normal.
    pub fn with_outward_normal(point: Point2, normal: Point2) -> Result<Self> {
        HalfPlane::new(normal.x, normal.y, normal.dot(point))
    }

    /// Points on the left of (or on) the directed line `from -> to`.
    pub fn left_of(from: Point2, to: Point2) -> Result<Self> {
        let d = to - from;
        // left side: cross(d, q - from) >= 0  <=>  (d.y, -d.x) . q <= (d.y, -d.x) . from
        HalfPlane::with_outward_normal(from, Point2::new(d.y, -d.x))
    }

    pub fn normal(&self) -> Point2 {
        Point2::new(self.a, self.b)
    }

    /// Signed distance; negative inside, positive outside.
    #[inline]
    pub fn signed_dist(&self, q: Point2) -> f64 {
        self.a * q.x + self.b * q.y - self.c
    }

    /// Closed membership with slack `eps`.
    #[inline]
    pub fn contains(&self, q: Point2, eps: f64) -> bool {
        self.signed_dist(q) <= eps
    }

    /// Strict membership: deeper than `eps` inside.
    #[inline]
    pub fn contains_strictly(&self, q: Point2, eps: f64) -> bool {
        self.signed_dist(q) < -eps
    }

    /// The closure of the complement.
    pub fn complement(&self) -> HalfPlane {
        HalfPlane { a: -self.a, b: -self.b, c: -self.c }
    }

    /// A point on the boundary line and its direction (interior on the left).
    pub fn boundary(&self) -> (Point2, Point2) {
        let n = self.normal();
        (n * self.c, Point2::new(-self.b, self.a))
    }

    /// Whether the boundary lines coincide within `eps` (either orientation).
    pub fn same_line(&self, o: &HalfPlane, eps: f64) -> bool {
        let same = (self.a - o.a).abs() <= eps
            && (self.b - o.b).abs() <= eps
            && (self.c - o.c).abs() <= eps;
        let opposite = (self.a + o.a).abs() <= eps
            && (self.b + o.b).abs() <= eps
            && (self.c + o.c).abs() <= eps;
        same || opposite
    }
}

/// Intersection of two closed half-planes whose boundaries pass through `apex`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wedge {
    pub apex: Point2,
    pub planes: [HalfPlane; 2],
}

impl Wedge {
    pub fn contains(&self, q: Point2, eps: f64) -> bool {
        self.planes.iter().all(|h| h.contains(q, eps))
    }

    pub fn contains_strictly(&self, q: Point2, eps: f64) -> bool {
        self.planes.iter().all(|h| h.contains_strictly(q, eps))
    }
}

/// Axis-aligned rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub min: Point2,
    pub max: Point2,
}

impl Rect {
    pub fn new(min: Point2, max: Point2) -> Self {
        Rect { min, max }
    }

    pub fn from_points<I: IntoIterator<Item = Point2>>(pts: I) -> Option<Rect> {
        let mut it = pts.into_iter();
        let first = it.next()?;
        let mut r = Rect { min: first, max: first };
        for p in it {
            r.min.x = r.min.x.min(p.x);
            r.min.y = r.min.y.min(p.y);
            r.max.x = r.max.x.max(p.x);
            r.max.y = r.max.y.max(p.y);
        }
        Some(r)
    }

    pub fn diameter(&self) -> f64 {
        self.min.dist(self.max)
    }

    pub fn expanded(&self, m: f64) -> Rect {
        Rect {
            min: Point2::new(self.min.x - m, self.min.y - m),
            max: Point2::new(self.max.x + m, self.max.y + m),
        }
    }

    pub fn union(&self, o: &Rect) -> Rect {
        Rect {
            min: Point2::new(self.min.x.min(o.min.x), self.min.y.min(o.min.y)),
            max: Point2::new(self.max.x.max(o.max.x), self.max.y.max(o.max.y)),
        }
    }

    pub fn corners(&self) -> Vec<Point2> {
        vec![
            self.min,
            Point2::new(self.max.x, self.min.y),
            self.max,
            Point2::new(self.min.x, self.max.y),
        ]
    }

    pub fn is_degenerate(&self) -> bool {
        !(self.max.x > self.min.x && self.max.y > self.min.y)
    }

    /// Largest and smallest value of the half-plane's signed distance over the rectangle.
    pub fn signed_dist_range(&self, h: &HalfPlane) -> (f64, f64) {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for c in self.corners() {
            let s = h.signed_dist(c);
            lo = lo.min(s);
            hi = hi.max(s);
        }
        (lo, hi)
    }
}

/// Clips a convex CCW polygon by a closed half-plane.
pub fn clip_convex(poly: &[Point2], h: &HalfPlane, eps: f64) -> Vec<Point2> {
    let n = poly.len();
    if n == 0 {
        return Vec::new();
    }
    let dists: Vec<f64> = poly.iter().map(|&p| h.signed_dist(p)).collect();
    if dists.iter().all(|&d| d <= eps) {
        return poly.to_vec();
    }
    if dists.iter().all(|&d| d >= -eps) {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let j = (i + 1) % n;
        let (p, q) = (poly[i], poly[j]);
        let (dp, dq) = (dists[i], dists[j]);
        let p_in = dp <= eps;
        let q_in = dq <= eps;
        if p_in {
            out.push(p);
        }
        if (p_in && !q_in && dp < -eps) || (!p_in && q_in && dq < -eps) {
            let t = dp / (dp - dq);
            out.push(p.lerp(q, t));
        }
    }
    dedup_ring(&mut out, eps);
    if out.len() < 3 || ring_area(&out) <= eps * eps {
        return Vec::new();
    }
    out
}

/// Removes consecutive duplicates (cyclically) closer than `eps`.
pub fn dedup_ring(ring: &mut Vec<Point2>, eps: f64) {
    if ring.is_empty() {
        return;
    }
    let mut out: Vec<Point2> = Vec::with_capacity(ring.len());
    for &p in ring.iter() {
        if out.last().is_none_or(|&q: &Point2| q.dist(p) > eps) {
            out.push(p);
        }
    }
    while out.len() > 1 && out[0].dist(*out.last().unwrap()) <= eps {
        out.pop();
    }
    *ring = out;
}

/// Signed area of a closed ring (positive for CCW).
pub fn ring_area(ring: &[Point2]) -> f64 {
    let n = ring.len();
    if n < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        let (p, q) = (ring[i], ring[(i + 1) % n]);
        s += p.cross(q);
    }
    0.5 * s
}

/// `bbox` intersected with every half-plane, as a CCW convex polygon (empty when infeasible).
pub fn halfplane_intersection(planes: &[HalfPlane], bbox: &Rect) -> Result<Vec<Point2>> {
    if bbox.is_degenerate() {
        return Err(Error::DegenerateInput("bounding box has zero extent"));
    }
    let eps = 1e-12 * bbox.diameter();
    let mut poly = bbox.corners();
    for h in planes {
        poly = clip_convex(&poly, h, eps);
        if poly.is_empty() {
            break;
        }
    }
    Ok(poly)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    pub fn new(a: Point2, b: Point2) -> Self {
        Segment { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    /// Distance from `q` to the closed segment.
    pub fn dist_to(&self, q: Point2) -> f64 {
        let d = self.b - self.a;
        let l2 = d.dot(d);
        if l2 == 0.0 {
            return q.dist(self.a);
        }
        let t = ((q - self.a).dot(d) / l2).clamp(0.0, 1.0);
        q.dist(self.a + d * t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentIntersection {
    None,
    Point(Point2),
    Overlap(Segment),
}

/// Classifies the intersection of two closed segments; touching endpoints count as a point.
pub fn segment_intersection(s1: &Segment, s2: &Segment, eps: f64) -> SegmentIntersection {
    let (p, q) = (s1.a, s1.b);
    let (r, s) = (s2.a, s2.b);
    let d1 = side(p, q, r, eps);
    let d2 = side(p, q, s, eps);
    let d3 = side(r, s, p, eps);
    let d4 = side(r, s, q, eps);

    if d1 == 0 && d2 == 0 {
        // Collinear: project onto s1's direction.
        let dir = q - p;
        let l2 = dir.dot(dir);
        if l2 == 0.0 {
            return SegmentIntersection::None;
        }
        let t = |x: Point2| (x - p).dot(dir) / l2;
        let (mut t0, mut t1) = (t(r), t(s));
        if t0 > t1 {
            std::mem::swap(&mut t0, &mut t1);
        }
        let lo = t0.max(0.0);
        let hi = t1.min(1.0);
        let tol = eps / l2.sqrt();
        if hi < lo - tol {
            return SegmentIntersection::None;
        }
        if hi - lo <= tol {
            return SegmentIntersection::Point(p + dir * (0.5 * (lo + hi)));
        }
        return SegmentIntersection::Overlap(Segment::new(p + dir * lo, p + dir * hi));
    }

    if d1 * d2 > 0 || d3 * d4 > 0 {
        return SegmentIntersection::None;
    }
    // Touching endpoints are reported exactly.
    if d1 == 0 && s2_within(s1, r, eps) {
        return SegmentIntersection::Point(r);
    }
    if d2 == 0 && s2_within(s1, s, eps) {
        return SegmentIntersection::Point(s);
    }
    if d3 == 0 && s2_within(s2, p, eps) {
        return SegmentIntersection::Point(p);
    }
    if d4 == 0 && s2_within(s2, q, eps) {
        return SegmentIntersection::Point(q);
    }
    if d1 == 0 || d2 == 0 || d3 == 0 || d4 == 0 {
        return SegmentIntersection::None;
    }
    let e = q - p;
    let f = s - r;
    let den = e.cross(f);
    let t = (r - p).cross(f) / den;
    SegmentIntersection::Point(p + e * t)
}

fn s2_within(seg: &Segment, x: Point2, eps: f64) -> bool {
    seg.dist_to(x) <= eps
}

/// Intersection point of the lines `a + s*da` and `b + t*db`, with the parameters.
pub fn line_intersection(a: Point2, da: Point2, b: Point2, db: Point2) -> Option<(f64, f64)> {
    let den = da.cross(db);
    if den == 0.0 {
        return None;
    }
    let w = b - a;
    Some((w.cross(db) / den, w.cross(da) / den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EPS: f64 = 1e-9;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn orientation_basic() {
        assert_eq!(orientation(p(0., 0.), p(1., 0.), p(0., 1.), EPS), Orientation::CounterClockwise);
        assert_eq!(orientation(p(0., 0.), p(1., 1.), p(2., 2.), EPS), Orientation::Collinear);
        assert_eq!(orientation(p(0., 0.), p(0., 1.), p(1., 1.), EPS), Orientation::Clockwise);
    }

    #[test]
    fn projection_examples() {
        let h = orthogonal_projection(p(3., 3.), p(0., 2.), p(1., 0.)).unwrap();
        assert_eq!(h, p(3., 2.));

        let h = orthogonal_projection(p(0.5, 5.), p(0., 2.), p(3., 1.)).unwrap();
        assert!((h.x - 1.35).abs() < 1e-12 && (h.y - 2.45).abs() < 1e-12, "{h}");
        // the projection minimizes the distance over a fine parameter scan
        let best = (-4000..4000)
            .map(|i| p(0., 2.) + p(3., 1.) * (i as f64 * 1e-3))
            .min_by(|a, b| a.dist(p(0.5, 5.)).total_cmp(&b.dist(p(0.5, 5.))))
            .unwrap();
        assert!(best.dist(h) < 2e-3);
        assert!((h - p(0.5, 5.)).dot(p(3., 1.)).abs() < 1e-12);

        let on = p(3., 3.);
        assert!(orthogonal_projection(on, p(0., 2.), p(3., 1.)).unwrap().dist(on) < 1e-12);
        assert!(orthogonal_projection(on, p(0., 0.), p(0., 0.)).is_err());
    }

    #[test]
    fn halfplane_intersection_examples() {
        let bbox = Rect::new(p(0., 0.), p(4., 4.));
        let sq = halfplane_intersection(&[], &bbox).unwrap();
        assert_eq!(sq.len(), 4);
        assert!((ring_area(&sq) - 16.0).abs() < 1e-12);

        let planes = [HalfPlane::new(1., 0., 2.).unwrap(), HalfPlane::new(0., 1., 2.).unwrap()];
        let q = halfplane_intersection(&planes, &bbox).unwrap();
        assert!((ring_area(&q) - 4.0).abs() < 1e-12);
        for v in &q {
            assert!(v.x <= 2.0 + 1e-12 && v.y <= 2.0 + 1e-12);
        }

        let planes = [HalfPlane::new(1., 0., 1.).unwrap(), HalfPlane::new(-1., 0., -3.).unwrap()];
        assert!(halfplane_intersection(&planes, &bbox).unwrap().is_empty());

        let flat = Rect::new(p(0., 0.), p(4., 0.));
        assert!(halfplane_intersection(&[], &flat).is_err());
    }

    #[test]
    fn segment_intersection_examples() {
        let s = |a: (f64, f64), b: (f64, f64)| Segment::new(p(a.0, a.1), p(b.0, b.1));
        assert_eq!(
            segment_intersection(&s((0., 0.), (2., 2.)), &s((0., 2.), (2., 0.)), EPS),
            SegmentIntersection::Point(p(1., 1.))
        );
        assert_eq!(
            segment_intersection(&s((0., 0.), (1., 0.)), &s((2., 0.), (3., 0.)), EPS),
            SegmentIntersection::None
        );
        assert_eq!(
            segment_intersection(&s((0., 0.), (2., 0.)), &s((1., 0.), (3., 0.)), EPS),
            SegmentIntersection::Overlap(s((1., 0.), (2., 0.)))
        );
        assert_eq!(
            segment_intersection(&s((0., 0.), (1., 0.)), &s((1., 0.), (1., 5.)), EPS),
            SegmentIntersection::Point(p(1., 0.))
        );
    }

    #[test]
    fn halfplane_normalization() {
        let h = HalfPlane::new(3., 4., 10.).unwrap();
        assert!((h.a - 0.6).abs() < 1e-15 && (h.c - 2.0).abs() < 1e-15);
        assert!(HalfPlane::new(0., 0., 1.).is_err());
        let l = HalfPlane::left_of(p(0., 0.), p(1., 0.)).unwrap();
        assert!(l.contains(p(5., 1.), 0.0) && !l.contains(p(5., -1.), 0.0));
        assert!(l.same_line(&l.complement(), 1e-12));
    }

    fn coord() -> impl Strategy<Value = f64> {
        -100.0f64..100.0
    }

    proptest! {
        #[test]
        fn orientation_antisymmetric(ax in coord(), ay in coord(), bx in coord(), by in coord(), cx in coord(), cy in coord()) {
            let (a, b, c) = (p(ax, ay), p(bx, by), p(cx, cy));
            let o = orientation(a, b, c, EPS);
            prop_assert_eq!(orientation(b, a, c, EPS), o.reversed());
            prop_assert_eq!(orientation(a, c, b, EPS), o.reversed());
            prop_assert_eq!(orientation(c, b, a, EPS), o.reversed());
        }

        #[test]
        fn projection_is_orthogonal(px in coord(), py in coord(), ax in coord(), ay in coord(), ang in 0.0f64..std::f64::consts::TAU) {
            let d = p(ang.cos(), ang.sin());
            let q = p(px, py);
            let h = orthogonal_projection(q, p(ax, ay), d).unwrap();
            prop_assert!((h - q).dot(d).abs() <= 1e-9 * 400.0);
        }

        #[test]
        fn halfplane_intersection_convex_and_feasible(
            planes in prop::collection::vec((0.0f64..std::f64::consts::TAU, -3.0f64..3.0), 0..12)
        ) {
            let hs: Vec<HalfPlane> = planes
                .iter()
                .map(|&(ang, c)| HalfPlane::new(ang.cos(), ang.sin(), c).unwrap())
                .collect();
            let bbox = Rect::new(p(-5., -5.), p(5., 5.));
            let poly = halfplane_intersection(&hs, &bbox).unwrap();
            let n = poly.len();
            for i in 0..n {
                let o = orientation(poly[i], poly[(i + 1) % n], poly[(i + 2) % n], 1e-9);
                prop_assert!(o != Orientation::Clockwise);
                for h in &hs {
                    prop_assert!(h.contains(poly[i], 1e-9));
                }
            }
        }
    }
}
