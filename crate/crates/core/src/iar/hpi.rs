//! Half-plane intersection by angular sorting, keeping the exact plane of every edge.

use std::collections::VecDeque;

use crate::clip::{EdgeTag, TaggedRing};
use crate::geom::{ring_area, HalfPlane, Point2, Rect};

/// A convex region stored as its edge planes in CCW order, with the vertex ring.
/// Edge `k` runs from `ring.pts[k]` to `ring.pts[k+1]` on `planes[k]`.
#[derive(Debug, Clone, Default)]
pub struct ConvexRegion {
    pub planes: Vec<HalfPlane>,
    pub ring: TaggedRing,
}

impl ConvexRegion {
    pub fn from_rect(r: &Rect) -> Self {
        intersect(rect_planes(r)).unwrap_or_default()
    }

    pub fn is_empty(&self) -> bool {
        self.ring.len() < 3
    }

    pub fn bbox(&self) -> Option<Rect> {
        Rect::from_points(self.ring.pts.iter().copied())
    }

    /// `(plane, tag)` pairs of the edges.
    pub fn tagged_planes(&self) -> impl Iterator<Item = (HalfPlane, EdgeTag)> + '_ {
        self.planes.iter().copied().zip(self.ring.tags.iter().copied())
    }
}

pub fn rect_planes(r: &Rect) -> Vec<(HalfPlane, EdgeTag)> {
    let mk = |a: f64, b: f64, c: f64| (HalfPlane { a, b, c }, EdgeTag::Frame);
    vec![
        mk(0.0, -1.0, -r.min.y),
        mk(1.0, 0.0, r.max.x),
        mk(0.0, 1.0, r.max.y),
        mk(-1.0, 0.0, -r.min.x),
    ]
}

fn dir(h: &HalfPlane) -> Point2 {
    Point2::new(-h.b, h.a)
}

fn meet(h: &HalfPlane, g: &HalfPlane) -> Option<Point2> {
    let den = h.a * g.b - h.b * g.a;
    if den == 0.0 {
        return None;
    }
    Some(Point2::new((h.c * g.b - h.b * g.c) / den, (h.a * g.c - h.c * g.a) / den))
}

/// Intersection of closed half-planes; the input must bound the result (include a
/// frame). Returns `None` when the intersection has no interior.
pub fn intersect(mut hs: Vec<(HalfPlane, EdgeTag)>) -> Option<ConvexRegion> {
    if hs.len() < 3 {
        return None;
    }
    let ang = |h: &HalfPlane| h.a.atan2(-h.b);
    hs.sort_by(|x, y| ang(&x.0).total_cmp(&ang(&y.0)).then(x.0.c.total_cmp(&y.0.c)));
    // parallel planes with the same direction: keep the tightest (first after sorting by c)
    let mut uniq: Vec<(HalfPlane, EdgeTag)> = Vec::with_capacity(hs.len());
    for h in hs {
        if let Some(last) = uniq.last() {
            let (d0, d1) = (dir(&last.0), dir(&h.0));
            if d0.cross(d1).abs() <= 1e-15 && d0.dot(d1) > 0.0 {
                continue;
            }
        }
        uniq.push(h);
    }
    let scale = uniq.iter().map(|h| h.0.c.abs()).fold(1.0, f64::max);
    let tol = 1e-14 * scale;
    let out = |h: &HalfPlane, p: Point2| h.signed_dist(p) > tol;

    let mut dq: VecDeque<(HalfPlane, EdgeTag)> = VecDeque::with_capacity(uniq.len());
    let mut pts: VecDeque<Point2> = VecDeque::with_capacity(uniq.len());
    for h in uniq {
        while !pts.is_empty() && out(&h.0, *pts.back().unwrap()) {
            pts.pop_back();
            dq.pop_back();
        }
        while !pts.is_empty() && out(&h.0, *pts.front().unwrap()) {
            pts.pop_front();
            dq.pop_front();
        }
        if let Some(back) = dq.back() {
            let (db, dh) = (dir(&back.0), dir(&h.0));
            if db.cross(dh).abs() <= 1e-15 && db.dot(dh) < 0.0 {
                // anti-parallel after popping: nothing is left between them
                return None;
            }
            {
                let p = meet(&back.0, &h.0)?;
                pts.push_back(p)
            }
        }
        dq.push_back(h);
    }
    while pts.len() >= 2 && out(&dq.front().unwrap().0, *pts.back().unwrap()) {
        pts.pop_back();
        dq.pop_back();
    }
    while pts.len() >= 2 && out(&dq.back().unwrap().0, *pts.front().unwrap()) {
        pts.pop_front();
        dq.pop_front();
    }
    if dq.len() < 3 {
        return None;
    }
    let closing = meet(&dq.back().unwrap().0, &dq.front().unwrap().0)?;
    // vertex k is the start of edge k: intersection of plane k-1 and plane k
    let m = dq.len();
    let mut ring_pts = Vec::with_capacity(m);
    ring_pts.push(closing);
    ring_pts.extend(pts.iter().copied());
    let planes: Vec<HalfPlane> = dq.iter().map(|h| h.0).collect();
    let tags: Vec<EdgeTag> = dq.iter().map(|h| h.1).collect();
    // drop zero-length edges
    let mut keep_pts = Vec::with_capacity(m);
    let mut keep_planes = Vec::with_capacity(m);
    let mut keep_tags = Vec::with_capacity(m);
    for k in 0..m {
        let (a, b) = (ring_pts[k], ring_pts[(k + 1) % m]);
        if a.dist(b) > tol {
            keep_pts.push(a);
            keep_planes.push(planes[k]);
            keep_tags.push(tags[k]);
        }
    }
    if keep_pts.len() < 3 || !keep_pts.iter().all(|p| p.is_finite()) || ring_area(&keep_pts) <= tol * tol {
        return None;
    }
    Some(ConvexRegion { planes: keep_planes, ring: TaggedRing::new(keep_pts, keep_tags) })
}
