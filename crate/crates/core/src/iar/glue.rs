//! Union of interior-disjoint tagged pieces: window edges shared by neighbouring pieces
//! cancel, the remaining edges are linked into boundary cycles.

use std::collections::HashMap;

use crate::clip::{EdgeTag, TaggedRing};
use crate::geom::{ring_area, Point2, Segment};
use crate::polygon::{Chord, ccw_angle};

/// A directed boundary edge of the union.
#[derive(Debug, Clone, Copy)]
struct DEdge {
    a: Point2,
    b: Point2,
    tag: EdgeTag,
}

/// Cycles of the union boundary, split into CCW outer rings and CW holes.
#[derive(Debug, Clone, Default)]
pub struct Glued {
    pub outer: Vec<TaggedRing>,
    pub holes: Vec<TaggedRing>,
    pub open_chains: usize,
}

fn merge_intervals(mut iv: Vec<(f64, f64)>, eps: f64) -> Vec<(f64, f64)> {
    iv.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (a, b) in iv {
        match out.last_mut() {
            Some(last) if a <= last.1 + eps => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

fn subtract(a: &[(f64, f64)], b: &[(f64, f64)], eps: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &(s, e) in a {
        let mut cur = s;
        for &(bs, be) in b {
            if be <= cur || bs >= e {
                continue;
            }
            if bs > cur {
                out.push((cur, bs));
            }
            cur = cur.max(be);
        }
        if cur < e {
            out.push((cur, e));
        }
    }
    out.into_iter().filter(|(s, e)| e - s > eps).collect()
}

/// Glues pieces. `windows[base]` is the chord of the window with that base; clip edges
/// lying on a window of their piece, or on the window `clip_window[id]` of their own
/// constraint, are treated as window edges.
pub fn glue(pieces: &[TaggedRing], windows: &HashMap<usize, Chord>, clip_window: &[Option<usize>], eps: f64) -> Glued {
    let mut plain: Vec<DEdge> = Vec::new();
    let mut on_window: HashMap<usize, Vec<DEdge>> = HashMap::new();
    let tol = 10.0 * eps;
    for piece in pieces {
        let n = piece.len();
        // windows touching this piece
        let mut wins: Vec<usize> = piece
            .tags
            .iter()
            .filter_map(|t| match t {
                EdgeTag::Window(b) => Some(*b),
                _ => None,
            })
            .collect();
        wins.sort_unstable();
        wins.dedup();
        for k in 0..n {
            let e = DEdge { a: piece.pts[k], b: piece.pts[(k + 1) % n], tag: piece.tags[k] };
            match e.tag {
                EdgeTag::Window(b) => on_window.entry(b).or_default().push(e),
                EdgeTag::Clip(id) => {
                    let own = clip_window.get(id).copied().flatten();
                    let hit = wins.iter().copied().chain(own).find(|b| {
                        windows.get(b).is_some_and(|c| {
                            let s = c.segment();
                            s.dist_to(e.a) <= tol && s.dist_to(e.b) <= tol
                        })
                    });
                    match hit {
                        Some(b) => on_window.entry(b).or_default().push(DEdge { tag: EdgeTag::Window(b), ..e }),
                        None => plain.push(e),
                    }
                }
                _ => plain.push(e),
            }
        }
    }
    let mut bases: Vec<usize> = on_window.keys().copied().collect();
    bases.sort_unstable();
    for base in bases {
        let es = &on_window[&base];
        let (o, d) = match windows.get(&base) {
            Some(c) => {
                let s = c.segment();
                match (s.b - s.a).normalized() {
                    Some(d) => (s.a, d),
                    None => continue,
                }
            }
            None => {
                plain.extend(es.iter().copied());
                continue;
            }
        };
        let mut fwd = Vec::new();
        let mut bwd = Vec::new();
        for e in es {
            let (ta, tb) = ((e.a - o).dot(d), (e.b - o).dot(d));
            if tb > ta {
                fwd.push((ta, tb));
            } else if ta > tb {
                bwd.push((tb, ta));
            }
        }
        let (fwd, bwd) = (merge_intervals(fwd, eps), merge_intervals(bwd, eps));
        let at = |t: f64| o + d * t;
        for (s, e) in subtract(&fwd, &bwd, eps) {
            plain.push(DEdge { a: at(s), b: at(e), tag: EdgeTag::Window(base) });
        }
        for (s, e) in subtract(&bwd, &fwd, eps) {
            plain.push(DEdge { a: at(e), b: at(s), tag: EdgeTag::Window(base) });
        }
    }
    link(&plain, eps)
}

/// Snaps points within `eps` to shared ids.
struct Welder {
    cell: f64,
    grid: HashMap<(i64, i64), Vec<usize>>,
    pts: Vec<Point2>,
    eps: f64,
}

impl Welder {
    fn new(eps: f64) -> Self {
        Welder { cell: 4.0 * eps.max(f64::MIN_POSITIVE), grid: HashMap::new(), pts: Vec::new(), eps }
    }

    fn key(&self, p: Point2) -> (i64, i64) {
        ((p.x / self.cell).floor() as i64, (p.y / self.cell).floor() as i64)
    }

    fn id(&mut self, p: Point2) -> usize {
        let (kx, ky) = self.key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.grid.get(&(kx + dx, ky + dy)) {
                    for &i in ids {
                        if self.pts[i].dist(p) <= self.eps {
                            return i;
                        }
                    }
                }
            }
        }
        let i = self.pts.len();
        self.pts.push(p);
        self.grid.entry((kx, ky)).or_default().push(i);
        i
    }
}

fn link(edges: &[DEdge], eps: f64) -> Glued {
    let mut w = Welder::new(eps);
    let mut es: Vec<(usize, usize, EdgeTag)> = Vec::with_capacity(edges.len());
    for e in edges {
        let (a, b) = (w.id(e.a), w.id(e.b));
        if a != b {
            es.push((a, b, e.tag));
        }
    }
    // cancel exactly opposite edge pairs
    let mut count: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (k, &(a, b, _)) in es.iter().enumerate() {
        count.entry((a, b)).or_default().push(k);
    }
    let mut dead = vec![false; es.len()];
    for (k, &(a, b, _)) in es.iter().enumerate() {
        if dead[k] {
            continue;
        }
        if let Some(opp) = count.get_mut(&(b, a)) {
            if let Some(pos) = opp.iter().position(|&j| !dead[j]) {
                let j = opp.remove(pos);
                dead[j] = true;
                dead[k] = true;
            }
        }
    }
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); w.pts.len()];
    for (k, &(a, _, _)) in es.iter().enumerate() {
        if !dead[k] {
            out_edges[a].push(k);
        }
    }
    let pts = &w.pts;
    let mut used = dead.clone();
    let mut glued = Glued::default();
    for start in 0..es.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let mut cyc_pts = vec![pts[es[start].0]];
        let mut cyc_tags = vec![es[start].2];
        let mut cur = start;
        let closed = loop {
            let (a, b, _) = es[cur];
            let rev = pts[a] - pts[b];
            // first outgoing edge clockwise from the reversed incoming direction
            let mut best: Option<(f64, usize)> = None;
            for &k in &out_edges[b] {
                if used[k] && k != start {
                    continue;
                }
                let out = pts[es[k].1] - pts[b];
                let mut cw = ccw_angle(out, rev);
                if cw <= 0.0 {
                    cw = 2.0 * std::f64::consts::PI;
                }
                if best.is_none_or(|(bc, _)| cw < bc) {
                    best = Some((cw, k));
                }
            }
            match best {
                None => break false,
                Some((_, k)) if k == start => break true,
                Some((_, k)) => {
                    used[k] = true;
                    cyc_pts.push(pts[b]);
                    cyc_tags.push(es[k].2);
                    cur = k;
                }
            }
        };
        if !closed {
            glued.open_chains += 1;
            continue;
        }
        let ring = simplify(TaggedRing::new(cyc_pts, cyc_tags), eps);
        if ring.len() < 3 {
            continue;
        }
        let area = ring_area(&ring.pts);
        if area.abs() <= eps * eps {
            continue;
        }
        if area > 0.0 {
            glued.outer.push(ring);
        } else {
            glued.holes.push(ring);
        }
    }
    glued
}

/// Removes zero-width spikes (within `eps`) and collinear vertices (within `1e-4 * eps`
/// of the line through their neighbours).
pub fn simplify(mut ring: TaggedRing, eps: f64) -> TaggedRing {
    let line_tol = 1e-4 * eps;
    loop {
        let n = ring.len();
        if n < 3 {
            return ring;
        }
        let mut keep = vec![true; n];
        let mut changed = false;
        let mut k = 0;
        while k < n {
            let i = (k + n - 1) % n;
            let j = (k + 1) % n;
            if !keep[i] {
                k += 1;
                continue;
            }
            let (a, b, c) = (ring.pts[i], ring.pts[k], ring.pts[j]);
            if Segment::new(a, c).dist_to(b) <= line_tol || a.dist(c) <= eps {
                keep[k] = false;
                changed = true;
                k += 2;
                continue;
            }
            k += 1;
        }
        if !changed {
            return ring;
        }
        let mut pts = Vec::with_capacity(n);
        let mut tags = Vec::with_capacity(n);
        for k in 0..n {
            if keep[k] {
                pts.push(ring.pts[k]);
                tags.push(ring.tags[k]);
            } else if let Some(l) = tags.len().checked_sub(1) {
                // the merged edge keeps the tag of the longer part
                let prev = *pts.last().unwrap();
                let nxt = ring.pts[(k + 1) % n];
                if ring.pts[k].dist(nxt) > prev.dist(ring.pts[k]) {
                    tags[l] = ring.tags[k];
                }
            }
        }
        if !keep[0] {
            // the edge into vertex 0 is the last kept edge; fold its tag choice
            if let (Some(&last), Some(_)) = (pts.last(), tags.last()) {
                let nxt = ring.pts[1 % n];
                if ring.pts[0].dist(nxt) > last.dist(ring.pts[0]) {
                    let l = tags.len() - 1;
                    tags[l] = ring.tags[0];
                }
            }
        }
        ring = TaggedRing::new(pts, tags);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::BoundaryPoint;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn bp(q: Point2) -> BoundaryPoint {
        BoundaryPoint { edge: 0, t: 0.5, point: q }
    }

    #[test]
    fn two_squares_share_a_window() {
        let a = TaggedRing::new(
            vec![p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)],
            vec![EdgeTag::Boundary(0), EdgeTag::Window(9), EdgeTag::Boundary(1), EdgeTag::Boundary(2)],
        );
        let b = TaggedRing::new(
            vec![p(1., 0.), p(2., 0.), p(2., 1.), p(1., 1.)],
            vec![EdgeTag::Boundary(0), EdgeTag::Boundary(3), EdgeTag::Boundary(1), EdgeTag::Window(9)],
        );
        let mut wins = HashMap::new();
        wins.insert(9, Chord { start: bp(p(1., 0.)), end: bp(p(1., 1.)) });
        let g = glue(&[a, b], &wins, &[], 1e-9);
        assert_eq!(g.outer.len(), 1);
        assert_eq!(g.outer[0].len(), 4);
        assert!((g.outer[0].area() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn partial_window_leaves_a_notch() {
        let a = TaggedRing::new(
            vec![p(0., 0.), p(1., 0.), p(1., 2.), p(0., 2.)],
            vec![EdgeTag::Boundary(0), EdgeTag::Window(9), EdgeTag::Boundary(1), EdgeTag::Boundary(2)],
        );
        let b = TaggedRing::new(
            vec![p(1., 0.), p(2., 0.), p(1., 1.)],
            vec![EdgeTag::Boundary(0), EdgeTag::Clip(0), EdgeTag::Window(9)],
        );
        let mut wins = HashMap::new();
        wins.insert(9, Chord { start: bp(p(1., 0.)), end: bp(p(1., 2.)) });
        let g = glue(&[a, b], &wins, &[], 1e-9);
        assert_eq!(g.outer.len(), 1);
        assert!((g.outer[0].area() - 2.5).abs() < 1e-12);
        assert_eq!(g.outer[0].len(), 5);
    }

    #[test]
    fn pinched_squares_stay_apart() {
        let a = TaggedRing::new(vec![p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)], vec![EdgeTag::Frame; 4]);
        let b = TaggedRing::new(vec![p(1., 1.), p(2., 1.), p(2., 2.), p(1., 2.)], vec![EdgeTag::Frame; 4]);
        let g = glue(&[a, b], &HashMap::new(), &[], 1e-9);
        assert_eq!(g.outer.len(), 2);
        assert!(g.holes.is_empty());
    }
}
