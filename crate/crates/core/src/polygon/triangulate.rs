//! Triangulation by monotone decomposition, with ear clipping as a fallback,
//! plus the dual-graph walks built on it (point location and ray shooting).

use std::collections::HashMap;

use crate::geom::{signed_line_dist, Point2};

use super::{BoundaryPoint, SimplePolygon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TriangulationMethod {
    /// Monotone-piece decomposition by plane sweep, O(n log n).
    #[default]
    MonotoneSweep,
    /// Ear clipping, O(n^2).
    EarClipping,
}

/// Triangles over polygon vertex indices (each CCW) with dual adjacency:
/// `adj[t][k]` is the triangle across edge `(tris[t][k], tris[t][(k + 1) % 3])`.
#[derive(Debug, Clone)]
pub struct Triangulation {
    pub tris: Vec<[usize; 3]>,
    pub adj: Vec<[Option<usize>; 3]>,
    vert_tris: Vec<Vec<usize>>,
}

impl Triangulation {
    pub fn new(poly: &SimplePolygon, method: TriangulationMethod) -> Self {
        let tris = match method {
            TriangulationMethod::MonotoneSweep => {
                monotone_triangulate(poly).unwrap_or_else(|| ear_clip(poly))
            }
            TriangulationMethod::EarClipping => ear_clip(poly),
        };
        Self::from_triangles(poly, tris)
    }

    fn from_triangles(poly: &SimplePolygon, mut tris: Vec<[usize; 3]>) -> Self {
        let n = poly.len();
        // boundary order is CCW order, even for slivers
        for t in tris.iter_mut() {
            t.sort_unstable();
        }
        let mut adj = vec![[None; 3]; tris.len()];
        let mut open: HashMap<(usize, usize), (usize, usize)> = HashMap::with_capacity(tris.len() * 2);
        let mut vert_tris = vec![Vec::new(); n];
        for (ti, t) in tris.iter().enumerate() {
            for k in 0..3 {
                vert_tris[t[k]].push(ti);
                let (a, b) = (t[k], t[(k + 1) % 3]);
                let key = (a.min(b), a.max(b));
                if let Some((tj, kj)) = open.remove(&key) {
                    adj[ti][k] = Some(tj);
                    adj[tj][kj] = Some(ti);
                } else {
                    open.insert(key, (ti, k));
                }
            }
        }
        Triangulation { tris, adj, vert_tris }
    }

    pub fn len(&self) -> usize {
        self.tris.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tris.is_empty()
    }

    pub fn triangles_at(&self, v: usize) -> &[usize] {
        &self.vert_tris[v]
    }

    pub fn points(&self, poly: &SimplePolygon, t: usize) -> [Point2; 3] {
        let tr = self.tris[t];
        [poly.vertex(tr[0]), poly.vertex(tr[1]), poly.vertex(tr[2])]
    }

    /// A triangle containing `q` (closed, within tolerance).
    pub fn locate(&self, poly: &SimplePolygon, q: Point2) -> Option<usize> {
        let eps = poly.eps();
        let mut best: Option<(f64, usize)> = None;
        for t in 0..self.tris.len() {
            let [a, b, c] = self.points(poly, t);
            let m = signed_line_dist(a, b, q)
                .min(signed_line_dist(b, c, q))
                .min(signed_line_dist(c, a, q));
            if m >= -eps && best.is_none_or(|(bm, _)| m > bm) {
                best = Some((m, t));
            }
        }
        best.map(|(_, t)| t)
    }

    /// Number of dual edges; a tree has exactly `len - 1`.
    pub fn dual_edge_count(&self) -> usize {
        self.adj.iter().flatten().filter(|x| x.is_some()).count() / 2
    }

    /// Whether the dual graph is connected.
    pub fn dual_connected(&self) -> bool {
        if self.tris.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.tris.len()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(t) = stack.pop() {
            for nb in self.adj[t].iter().flatten() {
                if !seen[*nb] {
                    seen[*nb] = true;
                    count += 1;
                    stack.push(*nb);
                }
            }
        }
        count == self.tris.len()
    }

    /// Shoots a ray from vertex `v` with unit direction `d` by walking across triangles.
    /// Vertices met exactly by the ray are passed when `d` enters the closed interior
    /// there, matching [`SimplePolygon::first_exit`]. Returns `None` when the walk cannot
    /// proceed; callers then fall back to [`SimplePolygon::ray_shoot`].
    pub fn shoot_from_vertex(&self, poly: &SimplePolygon, v: usize, d: Point2) -> Option<BoundaryPoint> {
        let mut v = v;
        for _ in 0..=poly.len() {
            match self.walk(poly, v, d)? {
                Walk::Hit(bp) => return Some(bp),
                Walk::Through(w) => {
                    if !poly.direction_enters_at_vertex(w, d) {
                        return Some(poly.vertex_point(w));
                    }
                    v = w;
                }
            }
        }
        None
    }

    fn walk(&self, poly: &SimplePolygon, v: usize, d: Point2) -> Option<Walk> {
        let eps = poly.eps();
        let o = poly.vertex(v);
        let s = |i: usize| d.cross(poly.vertex(i) - o);
        let ahead = |i: usize| d.dot(poly.vertex(i) - o) > eps;
        let mut cur = None;
        for &t in &self.vert_tris[v] {
            let tr = self.tris[t];
            let c = tr.iter().position(|&x| x == v)?;
            let (a, b) = (tr[(c + 1) % 3], tr[(c + 2) % 3]);
            let (sa, sb) = (s(a), s(b));
            if sa.abs() <= eps && ahead(a) {
                return Some(Walk::Through(a));
            }
            if sb.abs() <= eps && ahead(b) {
                return Some(Walk::Through(b));
            }
            if sa < -eps && sb > eps {
                cur = Some((t, a, b, sa, sb));
            }
        }
        let (mut t, mut a, mut b, mut sa, mut sb) = cur?;
        for _ in 0..=self.tris.len() {
            let tr = self.tris[t];
            let ka = tr.iter().position(|&x| x == a)?;
            if tr[(ka + 1) % 3] != b {
                return None;
            }
            match self.adj[t][ka] {
                None => {
                    if poly.next(a) != b {
                        return None;
                    }
                    let f = sa / (sa - sb);
                    return Some(Walk::Hit(poly.boundary_point(a, f)));
                }
                Some(nt) => {
                    let c = *self.tris[nt].iter().find(|&&x| x != a && x != b)?;
                    let sc = s(c);
                    if sc.abs() <= eps {
                        return Some(Walk::Through(c));
                    }
                    if sc < 0.0 {
                        a = c;
                        sa = sc;
                    } else {
                        b = c;
                        sb = sc;
                    }
                    t = nt;
                }
            }
        }
        None
    }
}

enum Walk {
    Hit(BoundaryPoint),
    Through(usize),
}

/// Rotated frame used by the sweep: a generic rotation keeps axis-parallel
/// inputs away from tied sweep positions.
fn sweep_frame(poly: &SimplePolygon) -> Vec<Point2> {
    let ang: f64 = std::f64::consts::FRAC_PI_2 + 0.012_345_678_9;
    let (s, c) = ang.sin_cos();
    poly.vertices()
        .iter()
        .map(|p| Point2::new(c * p.x + s * p.y, -s * p.x + c * p.y))
        .collect()
}

/// `p` comes after `q` in the top-to-bottom sweep order.
fn below(p: Point2, q: Point2) -> bool {
    p.y < q.y || (p.y == q.y && p.x > q.x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VType {
    Start,
    Split,
    End,
    Merge,
    RegularLeft,
    RegularRight,
}

fn x_at(pts: &[Point2], a: usize, b: usize, y: f64) -> f64 {
    let (p, q) = (pts[a], pts[b]);
    if (q.y - p.y).abs() < 1e-300 {
        return p.x.max(q.x);
    }
    p.x + (y - p.y) * (q.x - p.x) / (q.y - p.y)
}

fn monotone_triangulate(poly: &SimplePolygon) -> Option<Vec<[usize; 3]>> {
    let n = poly.len();
    let pts = sweep_frame(poly);
    let prev = |i: usize| (i + n - 1) % n;
    let next = |i: usize| (i + 1) % n;

    let vtype: Vec<VType> = (0..n)
        .map(|i| {
            let (a, v, b) = (pts[prev(i)], pts[i], pts[next(i)]);
            let convex = (v - a).cross(b - v) > 0.0;
            match (below(a, v), below(b, v)) {
                (true, true) => {
                    if convex {
                        VType::Start
                    } else {
                        VType::Split
                    }
                }
                (false, false) => {
                    if convex {
                        VType::End
                    } else {
                        VType::Merge
                    }
                }
                (false, true) => VType::RegularLeft,
                (true, false) => VType::RegularRight,
            }
        })
        .collect();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        pts[b].y.total_cmp(&pts[a].y).then(pts[a].x.total_cmp(&pts[b].x))
    });

    // status: edges (by start vertex index i: edge i -> i+1) sorted by x at the sweep line
    let mut status: Vec<usize> = Vec::new();
    let mut helper = vec![usize::MAX; n];
    let mut diags: Vec<(usize, usize)> = Vec::new();

    let left_of = |status: &Vec<usize>, v: usize| -> Option<usize> {
        let y = pts[v].y;
        let k = status.partition_point(|&e| x_at(&pts, e, next(e), y) < pts[v].x);
        if k == 0 {
            None
        } else {
            Some(k - 1)
        }
    };
    let insert = |status: &mut Vec<usize>, e: usize, v: usize| {
        let y = pts[v].y;
        let k = status.partition_point(|&f| x_at(&pts, f, next(f), y) < pts[v].x);
        status.insert(k, e);
    };
    let remove = |status: &mut Vec<usize>, e: usize| -> bool {
        if let Some(k) = status.iter().position(|&f| f == e) {
            status.remove(k);
            true
        } else {
            false
        }
    };

    for &v in &order {
        let ep = prev(v);
        match vtype[v] {
            VType::Start => {
                insert(&mut status, v, v);
                helper[v] = v;
            }
            VType::End => {
                let h = helper[ep];
                if h == usize::MAX {
                    return None;
                }
                if vtype[h] == VType::Merge {
                    diags.push((v, h));
                }
                if !remove(&mut status, ep) {
                    return None;
                }
            }
            VType::Split => {
                let k = left_of(&status, v)?;
                let ej = status[k];
                diags.push((v, helper[ej]));
                helper[ej] = v;
                insert(&mut status, v, v);
                helper[v] = v;
            }
            VType::Merge => {
                let h = helper[ep];
                if h == usize::MAX {
                    return None;
                }
                if vtype[h] == VType::Merge {
                    diags.push((v, h));
                }
                if !remove(&mut status, ep) {
                    return None;
                }
                let k = left_of(&status, v)?;
                let ej = status[k];
                if vtype[helper[ej]] == VType::Merge {
                    diags.push((v, helper[ej]));
                }
                helper[ej] = v;
            }
            VType::RegularLeft => {
                let h = helper[ep];
                if h == usize::MAX {
                    return None;
                }
                if vtype[h] == VType::Merge {
                    diags.push((v, h));
                }
                if !remove(&mut status, ep) {
                    return None;
                }
                insert(&mut status, v, v);
                helper[v] = v;
            }
            VType::RegularRight => {
                let k = left_of(&status, v)?;
                let ej = status[k];
                if vtype[helper[ej]] == VType::Merge {
                    diags.push((v, helper[ej]));
                }
                helper[ej] = v;
            }
        }
    }

    let pieces = split_faces(&pts, n, &diags)?;
    let mut tris = Vec::with_capacity(n - 2);
    for piece in pieces {
        triangulate_monotone(&pts, &piece, &mut tris)?;
    }
    if tris.len() != n - 2 {
        return None;
    }
    Some(tris)
}

/// Faces of the polygon subdivided by non-crossing diagonals, each as a CCW index list.
fn split_faces(pts: &[Point2], n: usize, diags: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    if diags.is_empty() {
        return Some(vec![(0..n).collect()]);
    }
    let mut out: Vec<Vec<usize>> = (0..n).map(|i| vec![(i + 1) % n]).collect();
    for &(a, b) in diags {
        out[a].push(b);
        out[b].push(a);
    }
    let mut used: HashMap<(usize, usize), bool> = HashMap::new();
    for (u, nbrs) in out.iter().enumerate() {
        for &v in nbrs {
            used.insert((u, v), false);
        }
    }
    let mut faces = Vec::new();
    let mut keys: Vec<(usize, usize)> = used.keys().copied().collect();
    keys.sort_unstable();
    for start in keys {
        if used[&start] {
            continue;
        }
        let mut face = Vec::new();
        let (mut u, mut v) = start;
        loop {
            *used.get_mut(&(u, v))? = true;
            face.push(u);
            let back = pts[u] - pts[v];
            let mut best: Option<(f64, usize)> = None;
            for &w in &out[v] {
                if w == u && out[v].len() > 1 {
                    continue;
                }
                let ang = super::ccw_angle(pts[w] - pts[v], back);
                let ang = if ang <= 0.0 { std::f64::consts::TAU } else { ang };
                if best.is_none_or(|(b, _)| ang < b) {
                    best = Some((ang, w));
                }
            }
            let (_, w) = best?;
            u = v;
            v = w;
            if (u, v) == start {
                break;
            }
            if face.len() > n + 2 * diags.len() {
                return None;
            }
        }
        faces.push(face);
    }
    Some(faces)
}

fn triangulate_monotone(pts: &[Point2], piece: &[usize], tris: &mut Vec<[usize; 3]>) -> Option<()> {
    let m = piece.len();
    if m < 3 {
        return None;
    }
    if m == 3 {
        tris.push([piece[0], piece[1], piece[2]]);
        return Some(());
    }
    let top = (0..m).min_by(|&a, &b| {
        let (p, q) = (pts[piece[a]], pts[piece[b]]);
        q.y.total_cmp(&p.y).then(p.x.total_cmp(&q.x))
    })?;
    let bot = (0..m).max_by(|&a, &b| {
        let (p, q) = (pts[piece[a]], pts[piece[b]]);
        q.y.total_cmp(&p.y).then(p.x.total_cmp(&q.x))
    })?;
    // left chain: CCW from top to bottom; right chain: CCW from bottom to top
    let mut left = Vec::new();
    let mut k = top;
    while k != bot {
        left.push(piece[k]);
        k = (k + 1) % m;
    }
    let mut right = Vec::new();
    let mut k = bot;
    while k != top {
        right.push(piece[k]);
        k = (k + 1) % m;
    }
    let bottom = piece[bot];
    right.remove(0);
    right.reverse();
    // merge by sweep order; chain flag: true = left
    let mut merged: Vec<(usize, bool)> = Vec::with_capacity(m);
    let (mut i, mut j) = (0, 0);
    while i < left.len() || j < right.len() {
        let take_left = if i >= left.len() {
            false
        } else if j >= right.len() {
            true
        } else {
            !below(pts[left[i]], pts[right[j]])
        };
        if take_left {
            merged.push((left[i], true));
            i += 1;
        } else {
            merged.push((right[j], false));
            j += 1;
        }
    }
    merged.push((bottom, true));

    let cross = |a: usize, b: usize, c: usize| (pts[b] - pts[a]).cross(pts[c] - pts[a]);
    let mut stack: Vec<(usize, bool)> = vec![merged[0], merged[1]];
    for &(uj, lj) in &merged[2..m - 1] {
        let (_, ltop) = *stack.last()?;
        if lj != ltop {
            for w in stack.windows(2) {
                tris.push([uj, w[0].0, w[1].0]);
            }
            let last = *stack.last()?;
            stack.clear();
            stack.push(last);
            stack.push((uj, lj));
        } else {
            let mut last = stack.pop()?;
            while let Some(&top) = stack.last() {
                let c = cross(uj, last.0, top.0);
                let ok = if lj { c < 0.0 } else { c > 0.0 };
                let scale = pts[uj].dist(pts[top.0]) * pts[uj].dist(pts[last.0]);
                if ok && c.abs() > 1e-14 * scale {
                    tris.push([uj, last.0, top.0]);
                    last = stack.pop()?;
                } else {
                    break;
                }
            }
            stack.push(last);
            stack.push((uj, lj));
        }
    }
    let (un, _) = merged[m - 1];
    for w in stack.windows(2) {
        tris.push([un, w[0].0, w[1].0]);
    }
    Some(())
}

/// O(n^2) ear clipping.
pub(crate) fn ear_clip(poly: &SimplePolygon) -> Vec<[usize; 3]> {
    let n = poly.len();
    let mut idx: Vec<usize> = (0..n).collect();
    let mut tris = Vec::with_capacity(n - 2);
    let p = |i: usize| poly.vertex(i);
    let mut guard = 0;
    while idx.len() > 3 {
        let m = idx.len();
        let mut clipped = false;
        // prefer the best-shaped convex ear to limit slivers
        let mut best: Option<(f64, usize)> = None;
        for k in 0..m {
            let (a, b, c) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
            let cr = (p(b) - p(a)).cross(p(c) - p(b));
            if cr <= 0.0 {
                continue;
            }
            let ear = idx.iter().all(|&o| {
                if o == a || o == b || o == c {
                    return true;
                }
                let q = p(o);
                !(signed_line_dist(p(a), p(b), q) >= 0.0
                    && signed_line_dist(p(b), p(c), q) >= 0.0
                    && signed_line_dist(p(c), p(a), q) >= 0.0)
            });
            if ear {
                let quality = cr / (p(a).dist(p(c)).powi(2) + 1e-300);
                if best.is_none_or(|(bq, _)| quality > bq) {
                    best = Some((quality, k));
                }
                if m > 64 {
                    break;
                }
            }
        }
        if let Some((_, k)) = best {
            let (a, b, c) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
            tris.push([a, b, c]);
            idx.remove(k);
            clipped = true;
        }
        if !clipped {
            // degenerate remainder: clip any convex-or-flat vertex
            let k = guard % m;
            let (a, b, c) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
            tris.push([a, b, c]);
            idx.remove(k);
            guard += 1;
        }
    }
    tris.push([idx[0], idx[1], idx[2]]);
    tris
}
