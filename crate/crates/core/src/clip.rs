//! Tagged polygon rings and half-plane clipping of simple (possibly non-convex)
//! polygons, where one input may split into several pieces.

use crate::geom::{ring_area, HalfPlane, Point2};

/// Where an edge of a derived ring came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeTag {
    /// Part of polygon edge `i`.
    Boundary(usize),
    /// Part of the window whose base is reflex vertex `i`.
    Window(usize),
    /// Part of the boundary line of constraint `i`.
    Clip(usize),
    /// Part of an auxiliary bounding frame.
    Frame,
}

/// A CCW ring where edge `k` runs from `pts[k]` to `pts[k + 1]` and carries `tags[k]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TaggedRing {
    pub pts: Vec<Point2>,
    pub tags: Vec<EdgeTag>,
}

impl TaggedRing {
    pub fn new(pts: Vec<Point2>, tags: Vec<EdgeTag>) -> Self {
        debug_assert_eq!(pts.len(), tags.len());
        TaggedRing { pts, tags }
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    pub fn area(&self) -> f64 {
        ring_area(&self.pts)
    }

    /// Drops zero-length edges (within `eps`), keeping the tag of the surviving edge.
    pub fn dedup(&mut self, eps: f64) {
        let n = self.pts.len();
        if n == 0 {
            return;
        }
        let mut pts = Vec::with_capacity(n);
        let mut tags = Vec::with_capacity(n);
        for k in 0..n {
            if let Some(&last) = pts.last() {
                if self.pts[k].dist(last) <= eps {
                    // the edge ending at pts[k] collapses; continue the previous point
                    let l = tags.len() - 1;
                    tags[l] = self.tags[k];
                    continue;
                }
            }
            pts.push(self.pts[k]);
            tags.push(self.tags[k]);
        }
        while pts.len() > 1 && pts[0].dist(*pts.last().unwrap()) <= eps {
            pts.pop();
            tags.pop();
        }
        self.pts = pts;
        self.tags = tags;
    }

    /// Closed point-in-ring test with boundary tolerance.
    pub fn contains(&self, q: Point2, eps: f64) -> bool {
        let n = self.pts.len();
        let mut inside = false;
        for i in 0..n {
            let a = self.pts[i];
            let b = self.pts[(i + 1) % n];
            if crate::geom::Segment::new(a, b).dist_to(q) <= eps {
                return true;
            }
            if (a.y > q.y) != (b.y > q.y) {
                let x = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if x > q.x {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

/// Clips a simple CCW ring to the closed half-plane `h`, tagging new edges with `tag`.
/// Vertices within `eps` of the boundary line count as lying on it. The result may
/// consist of several rings; slivers with area below `eps^2` are dropped.
pub fn clip_ring(ring: &TaggedRing, h: &HalfPlane, tag: EdgeTag, eps: f64) -> Vec<TaggedRing> {
    let n = ring.len();
    if n < 3 {
        return Vec::new();
    }
    let sd: Vec<f64> = ring.pts.iter().map(|&p| h.signed_dist(p)).collect();
    let cls = |x: f64| -> i8 {
        if x > eps {
            1
        } else if x < -eps {
            -1
        } else {
            0
        }
    };
    if sd.iter().all(|&x| x <= eps) {
        return vec![ring.clone()];
    }
    if sd.iter().all(|&x| x >= -eps) {
        return Vec::new();
    }

    // augmented ring with crossing points inserted
    let mut pts: Vec<Point2> = Vec::with_capacity(n + 8);
    let mut tags: Vec<EdgeTag> = Vec::with_capacity(n + 8);
    let mut cl: Vec<i8> = Vec::with_capacity(n + 8);
    for i in 0..n {
        let j = (i + 1) % n;
        let (ci, cj) = (cls(sd[i]), cls(sd[j]));
        pts.push(ring.pts[i]);
        tags.push(ring.tags[i]);
        cl.push(ci);
        if ci * cj < 0 {
            let f = sd[i] / (sd[i] - sd[j]);
            pts.push(ring.pts[i].lerp(ring.pts[j], f));
            tags.push(ring.tags[i]);
            cl.push(0);
        }
    }
    let m = pts.len();
    // direction along the line with the kept side on its left
    let dir = h.normal().perp();
    let keep = |k: usize| -> bool {
        let j = (k + 1) % m;
        match (cl[k], cl[j]) {
            (1, _) | (_, 1) => false,
            (0, 0) => (pts[j] - pts[k]).dot(dir) >= 0.0,
            _ => true,
        }
    };
    let kept: Vec<bool> = (0..m).map(keep).collect();
    if kept.iter().all(|&k| k) {
        return vec![ring.clone()];
    }

    // chains of kept edges; each starts and ends on the line
    struct Chain {
        pts: Vec<Point2>,
        tags: Vec<EdgeTag>,
    }
    let start0 = (0..m).find(|&k| !kept[k]).expect("some edge dropped");
    let mut chains: Vec<Chain> = Vec::new();
    let mut k = (start0 + 1) % m;
    let mut steps = 0;
    while steps < m {
        if kept[k] {
            let mut c = Chain { pts: vec![pts[k]], tags: Vec::new() };
            while kept[k] && steps < m {
                c.tags.push(tags[k]);
                k = (k + 1) % m;
                c.pts.push(pts[k]);
                steps += 1;
            }
            chains.push(c);
        } else {
            k = (k + 1) % m;
            steps += 1;
        }
    }
    if chains.is_empty() {
        return Vec::new();
    }

    // pair each chain end with the next chain start along `dir`
    let origin = pts[start0];
    let pos = |p: Point2| (p - origin).dot(dir);
    let mut starts: Vec<(f64, usize)> = chains.iter().enumerate().map(|(i, c)| (pos(c.pts[0]), i)).collect();
    starts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut used = vec![false; chains.len()];
    let mut next_of = vec![usize::MAX; chains.len()];
    let mut ends: Vec<(f64, usize)> =
        chains.iter().enumerate().map(|(i, c)| (pos(*c.pts.last().unwrap()), i)).collect();
    ends.sort_by(|a, b| a.0.total_cmp(&b.0));
    for &(te, ci) in &ends {
        // nearest unused start at or beyond te
        let lo = starts.partition_point(|&(ts, _)| ts < te - eps);
        let mut pick = None;
        for &(_, cj) in &starts[lo..] {
            if !used[cj] {
                pick = Some(cj);
                break;
            }
        }
        let cj = match pick {
            Some(cj) => cj,
            None => match starts.iter().find(|&&(_, cj)| !used[cj]) {
                Some(&(_, cj)) => cj,
                None => break,
            },
        };
        used[cj] = true;
        next_of[ci] = cj;
    }

    let mut out = Vec::new();
    let mut visited = vec![false; chains.len()];
    for s in 0..chains.len() {
        if visited[s] {
            continue;
        }
        let mut r = TaggedRing::default();
        let mut c = s;
        let mut guard = 0;
        while !visited[c] && guard <= chains.len() {
            visited[c] = true;
            let ch = &chains[c];
            r.pts.extend_from_slice(&ch.pts);
            r.tags.extend_from_slice(&ch.tags);
            // closing edge from this chain's end to the next chain's start
            r.tags.push(tag);
            let nx = next_of[c];
            if nx == usize::MAX {
                break;
            }
            c = nx;
            guard += 1;
        }
        r.dedup(eps);
        if r.len() >= 3 && r.area() > eps * eps {
            out.push(r);
        }
    }
    out
}

/// Clips a ring by several half-planes in sequence.
pub fn clip_ring_all(ring: &TaggedRing, planes: &[(HalfPlane, EdgeTag)], eps: f64) -> Vec<TaggedRing> {
    let mut cur = vec![ring.clone()];
    for (h, tag) in planes {
        let mut next = Vec::new();
        for r in &cur {
            next.extend(clip_ring(r, h, *tag, eps));
        }
        cur = next;
        if cur.is_empty() {
            break;
        }
    }
    cur
}

/// A convex polygon whose edges remember the half-plane that produced them.
#[derive(Debug, Clone, Default)]
pub struct TaggedConvex {
    pub ring: TaggedRing,
}

impl TaggedConvex {
    pub fn from_rect(min: Point2, max: Point2) -> Self {
        let pts = vec![min, Point2::new(max.x, min.y), max, Point2::new(min.x, max.y)];
        TaggedConvex { ring: TaggedRing::new(pts, vec![EdgeTag::Frame; 4]) }
    }

    pub fn is_empty(&self) -> bool {
        self.ring.len() < 3
    }

    /// Sutherland-Hodgman step against one half-plane.
    pub fn clip(&self, h: &HalfPlane, tag: EdgeTag, eps: f64) -> TaggedConvex {
        let r = &self.ring;
        let n = r.len();
        if n == 0 {
            return self.clone();
        }
        let sd: Vec<f64> = r.pts.iter().map(|&p| h.signed_dist(p)).collect();
        if sd.iter().all(|&x| x <= eps) {
            return self.clone();
        }
        let mut pts = Vec::with_capacity(n + 1);
        let mut tags = Vec::with_capacity(n + 1);
        for i in 0..n {
            let j = (i + 1) % n;
            let (ins_i, ins_j) = (sd[i] <= eps, sd[j] <= eps);
            if ins_i {
                pts.push(r.pts[i]);
                tags.push(r.tags[i]);
                if !ins_j {
                    // leaving: the edge to the crossing keeps its tag, then the new edge
                    let f = sd[i] / (sd[i] - sd[j]);
                    let x = r.pts[i].lerp(r.pts[j], f);
                    if sd[i] < -eps {
                        pts.push(x);
                        tags.push(tag);
                    } else {
                        let l = tags.len() - 1;
                        tags[l] = tag;
                    }
                }
            } else if ins_j && sd[j] < -eps {
                let f = sd[i] / (sd[i] - sd[j]);
                pts.push(r.pts[i].lerp(r.pts[j], f));
                tags.push(r.tags[i]);
            }
        }
        let mut ring = TaggedRing::new(pts, tags);
        ring.dedup(eps);
        if ring.len() < 3 || ring.area() <= eps * eps {
            return TaggedConvex::default();
        }
        TaggedConvex { ring }
    }

    /// Edge half-planes of the polygon with their tags (frame edges skipped).
    pub fn edge_planes(&self) -> Vec<(HalfPlane, EdgeTag)> {
        let r = &self.ring;
        let n = r.len();
        (0..n)
            .filter(|&k| r.tags[k] != EdgeTag::Frame)
            .filter_map(|k| {
                let (a, b) = (r.pts[k], r.pts[(k + 1) % n]);
                HalfPlane::left_of(a, b).ok().map(|h| (h, r.tags[k]))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn ring(pts: Vec<Point2>) -> TaggedRing {
        let n = pts.len();
        TaggedRing::new(pts, (0..n).map(EdgeTag::Boundary).collect())
    }

    #[test]
    fn clip_square_in_half() {
        let sq = ring(vec![p(0., 0.), p(4., 0.), p(4., 4.), p(0., 4.)]);
        let h = HalfPlane::new(1., 0., 1.).unwrap();
        let out = clip_ring(&sq, &h, EdgeTag::Clip(7), 1e-9);
        assert_eq!(out.len(), 1);
        assert!((out[0].area() - 4.0).abs() < 1e-12);
        assert!(out[0].tags.contains(&EdgeTag::Clip(7)));
    }

    #[test]
    fn clip_u_shape_splits() {
        // U opening upwards, cut by y <= ... keeping the top part: two prongs
        let u = ring(vec![
            p(0., 0.),
            p(6., 0.),
            p(6., 4.),
            p(4., 4.),
            p(4., 2.),
            p(2., 2.),
            p(2., 4.),
            p(0., 4.),
        ]);
        let h = HalfPlane::new(0., -1., -3.).unwrap(); // y >= 3
        let out = clip_ring(&u, &h, EdgeTag::Clip(0), 1e-9);
        assert_eq!(out.len(), 2);
        let total: f64 = out.iter().map(|r| r.area()).sum();
        assert!((total - 4.0).abs() < 1e-12);
        for r in &out {
            assert!(r.area() > 0.0);
        }
    }

    #[test]
    fn clip_through_vertices() {
        let sq = ring(vec![p(0., 0.), p(4., 0.), p(4., 4.), p(0., 4.)]);
        // diagonal x + y <= 4 through two corners
        let h = HalfPlane::new(1., 1., 4.).unwrap();
        let out = clip_ring(&sq, &h, EdgeTag::Clip(1), 1e-9);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].len(), 3);
        assert!((out[0].area() - 8.0).abs() < 1e-12);
        // along an edge, keeping the inside
        let h = HalfPlane::new(0., 1., 4.).unwrap();
        assert_eq!(clip_ring(&sq, &h, EdgeTag::Clip(1), 1e-9)[0], sq);
        let h = HalfPlane::new(0., -1., -4.).unwrap();
        assert!(clip_ring(&sq, &h, EdgeTag::Clip(1), 1e-9).is_empty());
    }

    #[test]
    fn convex_clip_tags() {
        let c = TaggedConvex::from_rect(p(0., 0.), p(4., 4.));
        let c = c.clip(&HalfPlane::new(1., 1., 4.).unwrap(), EdgeTag::Clip(3), 1e-9);
        assert_eq!(c.ring.len(), 3);
        assert!((c.ring.area() - 8.0).abs() < 1e-12);
        assert_eq!(c.edge_planes().len(), 1);
        let e = c.clip(&HalfPlane::new(-1., 0., -5.).unwrap(), EdgeTag::Clip(4), 1e-9);
        assert!(e.is_empty());
    }
}
