//! Geodesic shortest paths, the pruned shortest path tree and the shortest path map.

use std::collections::VecDeque;

use crate::clip::{EdgeTag, TaggedRing};
use crate::error::{Error, Result};
use crate::geom::{Point2, Rect};
use crate::polygon::{arc_len, BoundaryPoint, Chord, SimplePolygon, SubpolygonRef, Triangulation};

/// A shortest path inside the polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPath {
    pub points: Vec<Point2>,
    /// Polygon vertex index of each interior path point.
    pub vertices: Vec<usize>,
    pub length: f64,
}

/// A polygon with its triangulation, answering repeated geodesic queries.
#[derive(Debug, Clone)]
pub struct Geodesics<'a> {
    poly: &'a SimplePolygon,
    tri: Triangulation,
}

impl<'a> Geodesics<'a> {
    pub fn new(poly: &'a SimplePolygon) -> Self {
        Geodesics { poly, tri: poly.triangulate() }
    }

    pub fn with_triangulation(poly: &'a SimplePolygon, tri: Triangulation) -> Self {
        Geodesics { poly, tri }
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    fn locate(&self, q: Point2) -> Result<usize> {
        if !self.poly.contains_closed(q) {
            return Err(Error::PointOutsidePolygon(q));
        }
        self.tri.locate(self.poly, q).ok_or(Error::PointOutsidePolygon(q))
    }

    /// Shortest path from `a` to `b` by the funnel algorithm over the sleeve of triangles.
    pub fn path(&self, a: Point2, b: Point2) -> Result<GeodesicPath> {
        let ta = self.locate(a)?;
        let tb = self.locate(b)?;
        if ta == tb {
            return Ok(GeodesicPath { points: vec![a, b], vertices: vec![], length: a.dist(b) });
        }
        let sleeve = self.dual_path(ta, tb).ok_or(Error::DegenerateInput("disconnected triangulation"))?;
        // portals as (left, right) vertex ids; usize::MAX marks a or b
        const END: usize = usize::MAX;
        let mut portals: Vec<(usize, usize)> = Vec::with_capacity(sleeve.len() + 1);
        portals.push((END, END));
        for w in sleeve.windows(2) {
            let (t, nt) = (w[0], w[1]);
            let k = self.tri.adj[t].iter().position(|&x| x == Some(nt)).expect("adjacent");
            let tr = self.tri.tris[t];
            let (x, y) = (tr[k], tr[(k + 1) % 3]);
            portals.push((y, x));
        }
        portals.push((END, END));
        let last = portals.len() - 1;
        let pt = |i: usize, id: usize| -> Point2 {
            if id != END {
                self.poly.vertex(id)
            } else if i == 0 {
                a
            } else {
                b
            }
        };
        let mut points = vec![a];
        let mut vertices = Vec::new();
        let mut apex = a;
        let (mut left, mut left_i, mut left_id) = (a, 0usize, END);
        let (mut right, mut right_i, mut right_id) = (a, 0usize, END);
        let mut i = 1;
        while i <= last {
            let (lid, rid) = portals[i];
            let (l, r) = (pt(i, lid), pt(i, rid));
            // right side
            if (right - apex).cross(r - apex) >= 0.0 {
                if apex == right || (left - apex).cross(r - apex) < 0.0 {
                    right = r;
                    right_i = i;
                    right_id = rid;
                } else {
                    if left_id == END {
                        break;
                    }
                    points.push(left);
                    vertices.push(left_id);
                    apex = left;
                    right = apex;
                    right_i = left_i;
                    right_id = left_id;
                    i = left_i + 1;
                    continue;
                }
            }
            // left side
            if (left - apex).cross(l - apex) <= 0.0 {
                if apex == left || (right - apex).cross(l - apex) > 0.0 {
                    left = l;
                    left_i = i;
                    left_id = lid;
                } else {
                    if right_id == END {
                        break;
                    }
                    points.push(right);
                    vertices.push(right_id);
                    apex = right;
                    left = apex;
                    left_i = right_i;
                    left_id = right_id;
                    i = right_i + 1;
                    continue;
                }
            }
            i += 1;
        }
        if *points.last().unwrap() != b {
            points.push(b);
        }
        let length = points.windows(2).map(|w| w[0].dist(w[1])).sum();
        Ok(GeodesicPath { points, vertices, length })
    }

    pub fn distance(&self, a: Point2, b: Point2) -> Result<f64> {
        self.path(a, b).map(|p| p.length)
    }

    fn dual_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let m = self.tri.len();
        let mut prev = vec![usize::MAX; m];
        let mut q = VecDeque::from([from]);
        prev[from] = from;
        while let Some(t) = q.pop_front() {
            if t == to {
                break;
            }
            for nb in self.tri.adj[t].iter().flatten() {
                if prev[*nb] == usize::MAX {
                    prev[*nb] = t;
                    q.push_back(*nb);
                }
            }
        }
        if prev[to] == usize::MAX {
            return None;
        }
        let mut path = vec![to];
        let mut t = to;
        while t != from {
            t = prev[t];
            path.push(t);
        }
        path.reverse();
        Some(path)
    }
}

/// Shortest path between two points of the closed polygon.
pub fn geodesic(poly: &SimplePolygon, a: Point2, b: Point2) -> Result<GeodesicPath> {
    Geodesics::new(poly).path(a, b)
}

/// Parent of a vertex in the shortest path tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SptParent {
    Root,
    Vertex(usize),
}

/// Shortest path tree from a root point; the pruned tree keeps reflex vertices only.
#[derive(Debug, Clone)]
pub struct PrunedSpt {
    pub root: Point2,
    /// Set when the root coincides with a polygon vertex.
    pub root_vertex: Option<usize>,
    parent: Vec<Option<SptParent>>,
    dist: Vec<f64>,
    nodes: Vec<usize>,
    reflex: Vec<bool>,
}

impl PrunedSpt {
    /// Reflex vertices in the tree (all reflex vertices other than the root vertex).
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn is_node(&self, v: usize) -> bool {
        self.reflex[v] && Some(v) != self.root_vertex
    }

    /// Parent of any vertex in the full shortest path tree.
    pub fn parent(&self, v: usize) -> Option<SptParent> {
        self.parent[v]
    }

    pub fn parent_point(&self, poly: &SimplePolygon, v: usize) -> Option<Point2> {
        self.parent[v].map(|p| match p {
            SptParent::Root => self.root,
            SptParent::Vertex(u) => poly.vertex(u),
        })
    }

    /// Geodesic distance from the root to vertex `v`.
    pub fn dist(&self, v: usize) -> f64 {
        self.dist[v]
    }

    /// Pruned tree edges `(parent point, child vertex)`.
    pub fn edges(&self, poly: &SimplePolygon) -> Vec<(Point2, usize)> {
        self.nodes
            .iter()
            .filter_map(|&v| self.parent_point(poly, v).map(|u| (u, v)))
            .collect()
    }

    /// Children lists of the pruned tree, plus the root's children.
    pub fn children(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let mut root = Vec::new();
        let mut ch = vec![Vec::new(); self.parent.len()];
        for &v in &self.nodes {
            match self.parent[v] {
                Some(SptParent::Root) => root.push(v),
                Some(SptParent::Vertex(u)) => ch[u].push(v),
                None => {}
            }
        }
        (root, ch)
    }
}

/// Pruned shortest path tree of `p`.
pub fn pruned_spt(poly: &SimplePolygon, p: Point2) -> Result<PrunedSpt> {
    let tri = poly.triangulate();
    pruned_spt_with(poly, &tri, p)
}

/// Pruned shortest path tree of `p` over a given triangulation, by a funnel sweep of the
/// dual tree. Funnels live in one array; each child writes one slot and restores it.
pub fn pruned_spt_with(poly: &SimplePolygon, tri: &Triangulation, p: Point2) -> Result<PrunedSpt> {
    const ROOT: usize = usize::MAX;
    let n = poly.len();
    if !poly.contains_closed(p) {
        return Err(Error::PointOutsidePolygon(p));
    }
    let eps = poly.eps();
    let root_vertex = (0..n).find(|&i| poly.vertex(i).dist(p) <= eps);
    let pt = |id: usize| if id == ROOT { p } else { poly.vertex(id) };

    let reflex: Vec<bool> = (0..n).map(|i| poly.is_reflex(i)).collect();
    let mut parent: Vec<Option<SptParent>> = vec![None; n];
    let mut dist = vec![f64::INFINITY; n];
    let cap = 2 * tri.len() + 16;
    let mut buf = vec![ROOT; cap];
    let center = cap / 2;

    enum Task {
        Enter { t: usize, lo: usize, hi: usize, apex: usize, write: Option<(usize, usize)> },
        Restore(usize, usize),
    }
    let mut stack: Vec<Task> = Vec::new();
    let mut seen = vec![false; tri.len()];

    let mut starts: Vec<(usize, usize, usize)> = Vec::new();
    match root_vertex {
        Some(v) => {
            dist[v] = 0.0;
            for &t in tri.triangles_at(v) {
                seen[t] = true;
                let tr = tri.tris[t];
                let c = tr.iter().position(|&x| x == v).expect("incident");
                let (a, b) = (tr[(c + 1) % 3], tr[(c + 2) % 3]);
                for x in [a, b] {
                    parent[x] = Some(SptParent::Root);
                    dist[x] = p.dist(poly.vertex(x));
                }
                if let Some(nt) = tri.adj[t][(c + 1) % 3] {
                    starts.push((nt, b, a));
                }
            }
        }
        None => {
            let t0 = tri.locate(poly, p).ok_or(Error::PointOutsidePolygon(p))?;
            seen[t0] = true;
            let tr = tri.tris[t0];
            for &x in &tr {
                parent[x] = Some(SptParent::Root);
                dist[x] = p.dist(poly.vertex(x));
            }
            for k in 0..3 {
                if let Some(nt) = tri.adj[t0][k] {
                    starts.push((nt, tr[(k + 1) % 3], tr[k]));
                }
            }
        }
    }

    for (t, first, last) in starts {
        if seen[t] {
            continue;
        }
        stack.push(Task::Enter { t, lo: center - 1, hi: center + 1, apex: center, write: None });
        buf[center - 1] = first;
        buf[center] = ROOT;
        buf[center + 1] = last;
        while let Some(task) = stack.pop() {
            let (t, lo, hi, apex, write) = match task {
                Task::Restore(pos, old) => {
                    buf[pos] = old;
                    continue;
                }
                Task::Enter { t, lo, hi, apex, write } => (t, lo, hi, apex, write),
            };
            if let Some((pos, val)) = write {
                stack.push(Task::Restore(pos, buf[pos]));
                buf[pos] = val;
            }
            if seen[t] {
                continue;
            }
            seen[t] = true;
            let (first, last) = (buf[lo], buf[hi]);
            let tr = tri.tris[t];
            let i0 = match tr.iter().position(|&x| x == first) {
                Some(i) if tr[(i + 1) % 3] == last => i,
                _ => return Err(Error::DegenerateInput("inconsistent triangulation walk")),
            };
            let x = tr[(i0 + 2) % 3];
            let xp = poly.vertex(x);
            // tangent index: leading run of `g` over funnel edges lo..hi
            let g = |j: usize| -> bool {
                let (fj, fj1) = (pt(buf[j]), pt(buf[j + 1]));
                if j < apex {
                    (fj - fj1).cross(xp - fj1) <= 0.0
                } else {
                    (fj1 - fj).cross(xp - fj) < 0.0
                }
            };
            let (mut a, mut b) = (lo, hi);
            while a < b {
                let mid = (a + b) / 2;
                if g(mid) {
                    a = mid + 1;
                } else {
                    b = mid;
                }
            }
            let k = a;
            let mut via = buf[k];
            // a convex funnel vertex can only be hit on a straight continuation
            while via != ROOT && !reflex[via] {
                via = match parent[via] {
                    Some(SptParent::Vertex(w)) => w,
                    _ => ROOT,
                };
            }
            if parent[x].is_none() && Some(x) != root_vertex {
                parent[x] = Some(if via == ROOT { SptParent::Root } else { SptParent::Vertex(via) });
                let dv = if via == ROOT { 0.0 } else { dist[via] };
                dist[x] = dv + pt(via).dist(xp);
            }
            // child across (last, x): funnel [x] + f[k..=hi]
            if let Some(nt) = tri.adj[t][(i0 + 1) % 3] {
                if !seen[nt] && k >= 1 {
                    let apex2 = if k > apex { k } else { apex };
                    stack.push(Task::Enter { t: nt, lo: k - 1, hi, apex: apex2, write: Some((k - 1, x)) });
                }
            }
            // child across (x, first): funnel f[lo..=k] + [x]
            if let Some(nt) = tri.adj[t][(i0 + 2) % 3] {
                if !seen[nt] && k + 1 < cap {
                    let apex1 = if k < apex { k } else { apex };
                    stack.push(Task::Enter { t: nt, lo, hi: k + 1, apex: apex1, write: Some((k + 1, x)) });
                }
            }
        }
    }

    let nodes: Vec<usize> = (0..n).filter(|&i| reflex[i] && Some(i) != root_vertex).collect();
    Ok(PrunedSpt { root: p, root_vertex, parent, dist, nodes, reflex })
}

/// The window of a reflex tree node: the extension of its tree edge beyond the node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub base: usize,
    pub chord: Chord,
    /// The side of the window away from the root.
    pub far: SubpolygonRef,
    /// Whether the node's region lies just after (`+1`) or just before (`-1`) the base
    /// vertex along the boundary.
    pub side: i8,
}

/// One cell of the shortest path map.
#[derive(Debug, Clone)]
pub struct SpmRegion {
    /// `None` for the root (visibility) region.
    pub base: Option<usize>,
    pub base_point: Point2,
    pub window: Option<Chord>,
    pub side: i8,
    pub cell: TaggedRing,
    pub bbox: Rect,
}

impl SpmRegion {
    pub fn cell_polygon(&self) -> SimplePolygon {
        SimplePolygon::from_ccw_unchecked(self.cell.pts.clone())
    }
}

/// Shortest path map with its tree and windows.
#[derive(Debug, Clone)]
pub struct ShortestPathMap {
    pub spt: PrunedSpt,
    pub windows: Vec<Option<Window>>,
    /// Root region first, then node regions in CCW order of their base position.
    pub regions: Vec<SpmRegion>,
}

/// Window of tree node `v`, if its tree edge extends into the polygon.
pub fn window_of(poly: &SimplePolygon, tri: &Triangulation, spt: &PrunedSpt, v: usize) -> Result<Option<Window>> {
    let Some(u) = spt.parent_point(poly, v) else {
        return Ok(None);
    };
    let o = poly.vertex(v);
    let Some(d) = (o - u).normalized() else {
        return Ok(None);
    };
    if !poly.direction_strictly_inside_at_vertex(v, d, 1e-12) {
        return Ok(None);
    }
    let z = poly.shoot_from_vertex(tri, v, d)?;
    if z.point.dist(o) <= poly.eps() {
        return Ok(None);
    }
    let far = poly.piece_away_from(v, z, u - o);
    let side = if far.to.coord() == v as f64 { -1 } else { 1 };
    Ok(Some(Window { base: v, chord: far.chord, far, side }))
}

/// Shortest path map of `p`.
pub fn shortest_path_map(poly: &SimplePolygon, p: Point2) -> Result<ShortestPathMap> {
    let tri = poly.triangulate();
    shortest_path_map_with(poly, &tri, p)
}

pub fn shortest_path_map_with(poly: &SimplePolygon, tri: &Triangulation, p: Point2) -> Result<ShortestPathMap> {
    let spt = pruned_spt_with(poly, tri, p)?;
    let n = poly.len();
    let mut windows: Vec<Option<Window>> = vec![None; n];
    for &v in spt.nodes() {
        windows[v] = window_of(poly, tri, &spt, v)?;
    }
    let (root_children, children) = spt.children();
    let eps = poly.eps();

    let mut regions = Vec::new();
    // root cell: full boundary minus top-level arcs
    let top: Vec<&Window> = root_children.iter().filter_map(|&v| windows[v].as_ref()).collect();
    let root_ring = build_cell(poly, None, &top, eps);
    regions.push(SpmRegion {
        base: None,
        base_point: p,
        window: None,
        side: 0,
        bbox: Rect::from_points(root_ring.pts.iter().copied()).unwrap_or(poly.bbox()),
        cell: root_ring,
    });

    let mut order: Vec<usize> = (0..n).filter(|&v| windows[v].is_some()).collect();
    order.sort_by(|&a, &b| {
        let (wa, wb) = (windows[a].unwrap(), windows[b].unwrap());
        (a, wa.side).cmp(&(b, wb.side))
    });
    for v in order {
        let w = windows[v].unwrap();
        let kids: Vec<&Window> = children[v].iter().filter_map(|&c| windows[c].as_ref()).collect();
        let ring = build_cell(poly, Some(&w), &kids, eps);
        regions.push(SpmRegion {
            base: Some(v),
            base_point: poly.vertex(v),
            window: Some(w.chord),
            side: w.side,
            bbox: Rect::from_points(ring.pts.iter().copied()).unwrap_or(poly.bbox()),
            cell: ring,
        });
    }
    Ok(ShortestPathMap { spt, windows, regions })
}

/// Appends boundary vertices strictly between boundary points `a` and `b` (CCW).
fn walk_boundary(poly: &SimplePolygon, a: &BoundaryPoint, b: &BoundaryPoint, full: bool, ring: &mut TaggedRing) {
    let n = poly.len();
    let len = if full { n as f64 } else { arc_len(a.coord(), b.coord(), n) };
    let mut k = a.edge + 1;
    ring.tags.push(EdgeTag::Boundary(a.edge));
    loop {
        let idx = k % n;
        let off = arc_len(a.coord(), idx as f64, n);
        let off = if off == 0.0 && k > a.edge { n as f64 } else { off };
        if off >= len {
            break;
        }
        ring.pts.push(poly.vertex(idx));
        ring.tags.push(EdgeTag::Boundary(idx));
        k += 1;
    }
}

/// Ring of the cell bounded by `outer` (or the whole polygon) minus the arcs of `kids`.
fn build_cell(poly: &SimplePolygon, outer: Option<&Window>, kids: &[&Window], eps: f64) -> TaggedRing {
    let n = poly.len();
    let mut kids: Vec<&Window> = kids.iter().copied().filter(|w| arc_len(w.far.from.coord(), w.far.to.coord(), n) > 0.0).collect();
    let mut ring = TaggedRing::default();
    match outer {
        Some(w) => {
            let base = w.far.from.coord();
            kids.sort_by(|a, b| arc_len(base, a.far.from.coord(), n).total_cmp(&arc_len(base, b.far.from.coord(), n)));
            let mut cur = w.far.from;
            ring.pts.push(cur.point);
            for k in &kids {
                walk_boundary(poly, &cur, &k.far.from, false, &mut ring);
                ring.pts.push(k.far.from.point);
                ring.tags.push(EdgeTag::Window(k.base));
                ring.pts.push(k.far.to.point);
                cur = k.far.to;
            }
            walk_boundary(poly, &cur, &w.far.to, false, &mut ring);
            ring.pts.push(w.far.to.point);
            ring.tags.push(EdgeTag::Window(w.base));
        }
        None => {
            if kids.is_empty() {
                let start = poly.vertex_point(0);
                ring.pts.push(start.point);
                walk_boundary(poly, &start, &start, true, &mut ring);
            } else {
                kids.sort_by(|a, b| a.far.from.coord().total_cmp(&b.far.from.coord()));
                let m = kids.len();
                for i in 0..m {
                    let (k, nx) = (kids[i], kids[(i + 1) % m]);
                    ring.pts.push(k.far.to.point);
                    walk_boundary(poly, &k.far.to, &nx.far.from, false, &mut ring);
                    ring.pts.push(nx.far.from.point);
                    ring.tags.push(EdgeTag::Window(nx.base));
                }
            }
        }
    }
    // the closing edge tag count must match points
    debug_assert_eq!(ring.pts.len(), ring.tags.len(), "cell ring bookkeeping");
    ring.dedup(eps);
    ring
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn geodesic_examples() {
        let sq = square();
        let g = geodesic(&sq, p(1., 1.), p(3., 3.)).unwrap();
        assert_eq!(g.points, vec![p(1., 1.), p(3., 3.)]);
        assert!((g.length - 8f64.sqrt()).abs() < 1e-12);

        let s = spike6();
        let g = geodesic(&s, p(6., 1.), p(0.3, 4.5)).unwrap();
        assert_eq!(g.points, vec![p(6., 1.), p(3., 3.), p(0.3, 4.5)]);
        assert_eq!(g.vertices, vec![5]);

        let l = l_polygon();
        let g = geodesic(&l, p(0.5, 1.), p(3., 3.)).unwrap();
        assert_eq!(g.points, vec![p(0.5, 1.), p(2., 2.), p(3., 3.)]);
        assert!(geodesic(&l, p(1., 3.), p(3., 3.)).is_err());
    }

    #[test]
    fn spt_examples() {
        let s = spike6();
        for root in [p(0.5, 0.5), p(6., 1.)] {
            let t = pruned_spt(&s, root).unwrap();
            assert_eq!(t.nodes(), &[5]);
            assert_eq!(t.parent(5), Some(SptParent::Root));
            assert!((t.dist(5) - root.dist(p(3., 3.))).abs() < 1e-12);
        }
        let t = pruned_spt(&square(), p(2., 2.)).unwrap();
        assert!(t.nodes().is_empty());
        // vertex (0,4) of spike6 is hidden from (0.5,0.5) behind the tip
        let t = pruned_spt(&s, p(0.5, 0.5)).unwrap();
        assert_eq!(t.parent(4), Some(SptParent::Vertex(5)));
    }

    #[test]
    fn spm_examples() {
        let s = spike6();
        let m = shortest_path_map(&s, p(0.5, 0.5)).unwrap();
        assert_eq!(m.regions.len(), 2);
        let w = m.regions[1].window.unwrap();
        assert_eq!(w.start.point, p(3., 3.));
        assert!(w.end.point.dist(p(6., 6.)) < 1e-12);
        let total: f64 = m.regions.iter().map(|r| r.cell.area()).sum();
        assert!((total - s.area()).abs() < 1e-9 * s.area());

        let m = shortest_path_map(&s, p(6., 1.)).unwrap();
        assert_eq!(m.regions.len(), 2);
        let w = m.regions[1].window.unwrap();
        assert!(w.end.point.dist(p(0., 5.)) < 1e-12);
        let total: f64 = m.regions.iter().map(|r| r.cell.area()).sum();
        assert!((total - s.area()).abs() < 1e-9 * s.area());

        let m = shortest_path_map(&square(), p(1., 1.)).unwrap();
        assert_eq!(m.regions.len(), 1);
        assert!((m.regions[0].cell.area() - 16.0).abs() < 1e-12);
    }
}
