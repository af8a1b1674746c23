//! Constraining half-planes of pruned shortest-path-tree edges, point queries against
//! them, and construction of the inverse attraction region.

pub mod glue;
pub mod hpi;

use std::collections::HashMap;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::clip::{clip_ring_all, EdgeTag, TaggedConvex, TaggedRing};
use crate::error::{Error, Result};
use crate::geom::{HalfPlane, Point2, Rect};
use crate::polygon::{Chord, Containment, SimplePolygon, SubpolygonRef, Triangulation};
use crate::shortest_paths::{shortest_path_map_with, ShortestPathMap, SpmRegion};

use hpi::ConvexRegion;

/// Which construction produced a constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    Case1SideA,
    Case1SideB,
    Case2,
}

/// Result of [`classify_case`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseClass {
    Case1,
    /// `seen_edge` is the index of the incident edge of `v` that `u` partially sees.
    Case2 { seen_edge: usize },
}

/// A half-plane whose intersection with `domain` cannot attract the root.
#[derive(Debug, Clone)]
pub struct ConstrainingHalfPlane {
    pub id: usize,
    pub parent: Point2,
    pub vertex: usize,
    pub case_tag: CaseTag,
    /// Beacons strictly inside are constrained.
    pub plane: HalfPlane,
    pub domain: SubpolygonRef,
    pub seen_edge: Option<usize>,
}

impl ConstrainingHalfPlane {
    /// Point and direction of the effective line.
    pub fn effective_line(&self) -> (Point2, Point2) {
        self.plane.boundary()
    }

    pub fn chord(&self) -> Chord {
        self.domain.chord
    }
}

/// Case analysis for the pruned tree edge `(u, v)`.
pub fn classify_case(poly: &SimplePolygon, u: Point2, v: usize) -> Result<CaseClass> {
    let wedge = poly.deadwedge(v)?;
    let eps = poly.eps();
    let s = [wedge.planes[0].signed_dist(u), wedge.planes[1].signed_dist(u)];
    let inside = [s[0] < -eps, s[1] < -eps];
    if !inside[0] && !inside[1] {
        if s[0].abs() <= eps || s[1].abs() <= eps {
            return Err(Error::DegenerateOnBoundary(u));
        }
        return Ok(CaseClass::Case1);
    }
    let o = poly.vertex(v);
    let (wp, wn) = (poly.vertex(poly.prev(v)), poly.vertex(poly.next(v)));
    let edge_idx = [poly.prev(v), v];
    let side = [
        (o - wp).cross(u - wp) / o.dist(wp),
        (wn - o).cross(u - o) / wn.dist(o),
    ];
    let seen: Vec<usize> = (0..2)
        .filter(|&k| side[k] > eps || (side[k].abs() <= eps && inside[k]))
        .collect();
    let k = match seen.as_slice() {
        [k] => *k,
        [_, _] => match (inside[0], inside[1]) {
            (true, false) => 0,
            (false, true) => 1,
            _ => usize::from(s[1] < s[0]),
        },
        _ => usize::from(!inside[0] || (inside[1] && s[1] < s[0])),
    };
    Ok(CaseClass::Case2 { seen_edge: edge_idx[k] })
}

/// The one or two constraining half-planes of `(u, v)`; ids are left at zero.
pub fn constraining_halfplanes(
    poly: &SimplePolygon,
    tri: &Triangulation,
    u: Point2,
    v: usize,
) -> Result<Vec<ConstrainingHalfPlane>> {
    let o = poly.vertex(v);
    let mk = |case_tag, plane, domain, seen_edge| ConstrainingHalfPlane {
        id: 0,
        parent: u,
        vertex: v,
        case_tag,
        plane,
        domain,
        seen_edge,
    };
    match classify_case(poly, u, v)? {
        CaseClass::Case2 { seen_edge } => {
            let w = if seen_edge == v { poly.vertex(poly.next(v)) } else { poly.vertex(poly.prev(v)) };
            let plane = HalfPlane::with_outward_normal(o, o - w)?;
            let z = poly.shoot_from_vertex(tri, v, o - w)?;
            let domain = poly.piece_away_from(v, z, u - o);
            Ok(vec![mk(CaseTag::Case2, plane, domain, Some(seen_edge))])
        }
        CaseClass::Case1 => {
            let dl = o - u;
            let mut out = Vec::with_capacity(2);
            for (tag, ns) in [(CaseTag::Case1SideA, dl.perp()), (CaseTag::Case1SideB, -dl.perp())] {
                if !poly.direction_strictly_inside_at_vertex(v, ns, 1e-12) {
                    continue;
                }
                let z = poly.shoot_from_vertex(tri, v, ns)?;
                if z.point.dist(o) <= poly.eps() {
                    continue;
                }
                let plane = HalfPlane::with_outward_normal(o, ns)?;
                let domain = poly.piece_away_from(v, z, u - o);
                out.push(mk(tag, plane, domain, None));
            }
            Ok(out)
        }
    }
}

/// All constraints of a root point together with its shortest path map.
#[derive(Debug, Clone)]
pub struct ConstraintSet {
    pub point: Point2,
    pub spm: ShortestPathMap,
    pub constraints: Vec<ConstrainingHalfPlane>,
    poly: SimplePolygon,
    domains: Vec<OnceLock<SimplePolygon>>,
}

impl ConstraintSet {
    pub fn new(poly: &SimplePolygon, p: Point2) -> Result<Self> {
        let tri = poly.triangulate();
        Self::with_triangulation(poly, &tri, p)
    }

    pub fn with_triangulation(poly: &SimplePolygon, tri: &Triangulation, p: Point2) -> Result<Self> {
        let spm = shortest_path_map_with(poly, tri, p)?;
        Self::from_spm(poly, tri, spm)
    }

    pub fn from_spm(poly: &SimplePolygon, tri: &Triangulation, spm: ShortestPathMap) -> Result<Self> {
        let edges = spm.spt.edges(poly);
        let per_edge: Vec<Vec<ConstrainingHalfPlane>> = edges
            .par_iter()
            .map(|&(u, v)| constraining_halfplanes(poly, tri, u, v))
            .collect::<Result<_>>()?;
        let mut constraints: Vec<ConstrainingHalfPlane> = per_edge.into_iter().flatten().collect();
        for (i, c) in constraints.iter_mut().enumerate() {
            c.id = i;
        }
        let domains = constraints.iter().map(|_| OnceLock::new()).collect();
        Ok(ConstraintSet { point: spm.spt.root, spm, constraints, poly: poly.clone(), domains })
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// Whether `b` lies strictly inside constraint `i`'s plane and domain.
    pub fn constrains(&self, i: usize, b: Point2) -> bool {
        let c = &self.constraints[i];
        if c.plane.signed_dist(b) >= -self.poly.eps() {
            return false;
        }
        self.domain(i).contains(b) == Containment::Interior
    }

    /// The domain of constraint `i` as a polygon.
    pub fn domain(&self, i: usize) -> &SimplePolygon {
        self.domains[i].get_or_init(|| self.poly.materialize(&self.constraints[i].domain))
    }

    /// Ids of the constraints whose constraining region contains `b`.
    pub fn constraining(&self, b: Point2) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.constrains(i, b)).collect()
    }

    /// Pairs of constraints from different tree edges sharing a supporting line.
    pub fn collinear_pairs(&self, eps: f64) -> Vec<(usize, usize)> {
        let key = |h: &HalfPlane| {
            // orient so that lines, not half-planes, compare equal
            let flip = h.a < 0.0 || (h.a == 0.0 && h.b < 0.0);
            if flip {
                h.complement()
            } else {
                *h
            }
        };
        let mut idx: Vec<(HalfPlane, usize)> = self.constraints.iter().map(|c| (key(&c.plane), c.id)).collect();
        idx.sort_by(|x, y| x.0.b.atan2(x.0.a).total_cmp(&y.0.b.atan2(y.0.a)).then(x.0.c.total_cmp(&y.0.c)));
        let mut out = Vec::new();
        for i in 0..idx.len() {
            for j in i + 1..idx.len() {
                let (hi, hj) = (idx[i].0, idx[j].0);
                if (hj.b.atan2(hj.a) - hi.b.atan2(hi.a)).abs() > eps {
                    break;
                }
                let (ci, cj) = (&self.constraints[idx[i].1], &self.constraints[idx[j].1]);
                if ci.vertex != cj.vertex && hi.same_line(&hj, eps) {
                    out.push((ci.id.min(cj.id), ci.id.max(cj.id)));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Point query: `b` attracts the root iff no constraining region contains it.
pub fn attracts_by_theorem(poly: &SimplePolygon, set: &ConstraintSet, b: Point2) -> Result<bool> {
    if poly.contains(b) == Containment::Exterior {
        return Err(Error::PointOutsidePolygon(b));
    }
    Ok((0..set.len()).all(|i| !set.constrains(i, b)))
}

/// Where an IAR vertex lies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    OnPolygonBoundary,
    Internal,
}

/// Vertex counts of an IAR.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ComplexityStats {
    /// Boundary-lying vertices that are not polygon vertices.
    pub group1: usize,
    /// Vertices in the interior of the polygon.
    pub group2: usize,
    pub total_vertices: usize,
    /// Per polygon edge, IAR vertices strictly inside it.
    pub per_edge: Vec<usize>,
    pub per_edge_max: usize,
}

/// Wall time of each stage.
#[derive(Debug, Clone, Copy, Default)]
pub struct StageTimes {
    pub triangulate: Duration,
    pub spm: Duration,
    pub constraints: Duration,
    pub walk: Duration,
    pub glue: Duration,
}

impl StageTimes {
    pub fn total(&self) -> Duration {
        self.triangulate + self.spm + self.constraints + self.walk + self.glue
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algorithm {
    Naive,
    #[default]
    Optimal,
}

/// A computed inverse attraction region.
#[derive(Debug, Clone)]
pub struct IarResult {
    pub point: Point2,
    pub components: Vec<SimplePolygon>,
    /// Per component, per vertex.
    pub provenance: Vec<Vec<VertexKind>>,
    /// Per component, per edge: the originating polygon edge, window or constraint.
    pub edge_tags: Vec<Vec<EdgeTag>>,
    /// Clockwise cycles left by gluing; empty for valid input.
    pub holes: Vec<Vec<Point2>>,
    pub stats: ComplexityStats,
    /// Offset applied to the root point to reach general position.
    pub perturbation: Option<Point2>,
    /// Collinear constraint pairs that remained after the perturbation policy.
    pub collinear_pairs: Vec<(usize, usize)>,
    pub constraint_count: usize,
    pub times: StageTimes,
}

impl IarResult {
    pub fn area(&self) -> f64 {
        self.components.iter().map(|c| c.area()).sum()
    }

    pub fn vertex_count(&self) -> usize {
        self.components.iter().map(|c| c.len()).sum()
    }

    /// Closed membership.
    pub fn contains(&self, q: Point2) -> bool {
        self.components.iter().any(|c| c.contains(q) != Containment::Exterior)
    }

    /// Distance from `q` to the nearest component boundary.
    pub fn boundary_dist(&self, q: Point2) -> f64 {
        self.components.iter().map(|c| c.boundary_dist(q)).fold(f64::INFINITY, f64::min)
    }

    /// Internal edges: `(a, b, constraint id)`.
    pub fn internal_edges(&self) -> Vec<(Point2, Point2, usize)> {
        let mut out = Vec::new();
        for (c, tags) in self.components.iter().zip(&self.edge_tags) {
            let n = c.len();
            for k in 0..n {
                if let EdgeTag::Clip(id) = tags[k] {
                    out.push((c.vertex(k), c.vertex((k + 1) % n), id));
                }
            }
        }
        out
    }
}

/// Vertex statistics of a result.
pub fn complexity_stats(res: &IarResult, poly: &SimplePolygon) -> ComplexityStats {
    let _ = poly;
    res.stats.clone()
}

/// IAR of `p`, computed by clipping every SPM cell against its own constraint list.
pub fn iar_naive(poly: &SimplePolygon, p: Point2) -> Result<IarResult> {
    iar(poly, p, Algorithm::Naive)
}

/// IAR of `p`, computed with a segment tree over the cells and incremental half-plane
/// intersection.
pub fn iar_optimal(poly: &SimplePolygon, p: Point2) -> Result<IarResult> {
    iar(poly, p, Algorithm::Optimal)
}

pub fn iar(poly: &SimplePolygon, p: Point2, alg: Algorithm) -> Result<IarResult> {
    let t0 = Instant::now();
    let tri = poly.triangulate();
    let t_tri = t0.elapsed();
    let (set, mut times, perturbation) = match build(poly, &tri, p) {
        Ok((set, times)) => (set, times, None),
        Err(Error::DegenerateOnBoundary(_)) => perturbed(poly, &tri, p)?,
        Err(e) => return Err(e),
    };
    times.triangulate = t_tri;
    let mut collinear = set.collinear_pairs(1e-9);
    let mut set = set;
    let mut perturbation = perturbation;
    if !collinear.is_empty() && perturbation.is_none() {
        if let Ok((alt, _, off)) = perturbed(poly, &tri, p) {
            let alt_pairs = alt.collinear_pairs(1e-9);
            if alt_pairs.len() < collinear.len() {
                set = alt;
                collinear = alt_pairs;
                perturbation = off;
            }
        }
    }
    let mut res = assemble(poly, &set, alg, &mut times);
    res.point = p;
    res.perturbation = perturbation;
    res.collinear_pairs = collinear;
    res.times = times;
    Ok(res)
}

fn build(poly: &SimplePolygon, tri: &Triangulation, p: Point2) -> Result<(ConstraintSet, StageTimes)> {
    let mut times = StageTimes::default();
    let t = Instant::now();
    let spm = shortest_path_map_with(poly, tri, p)?;
    times.spm = t.elapsed();
    let t = Instant::now();
    let set = ConstraintSet::from_spm(poly, tri, spm)?;
    times.constraints = t.elapsed();
    Ok((set, times))
}

/// Retries with `p` moved by `1e-7 * diameter` along a fixed sequence of directions.
fn perturbed(
    poly: &SimplePolygon,
    tri: &Triangulation,
    p: Point2,
) -> Result<(ConstraintSet, StageTimes, Option<Point2>)> {
    let delta = 1e-7 * poly.diameter();
    let mut last = Error::DegenerateOnBoundary(p);
    for j in 0..32 {
        let ang = 0.3 + j as f64 * 2.399_963_229_728_653;
        let off = Point2::new(ang.cos(), ang.sin()) * delta;
        let q = p + off;
        if poly.contains(q) != Containment::Interior {
            continue;
        }
        match build(poly, tri, q) {
            Ok((set, times)) => return Ok((set, times, Some(off))),
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn assemble(poly: &SimplePolygon, set: &ConstraintSet, alg: Algorithm, times: &mut StageTimes) -> IarResult {
    let eps = poly.eps();
    let t = Instant::now();
    let pieces = match alg {
        Algorithm::Naive => pieces_naive(poly, set),
        Algorithm::Optimal => pieces_optimal(poly, set),
    };
    times.walk = t.elapsed();
    let t = Instant::now();
    let windows: HashMap<usize, Chord> =
        set.spm.windows.iter().flatten().map(|w| (w.base, w.chord)).collect();
    let clip_window: Vec<Option<usize>> =
        set.constraints.iter().map(|c| windows.contains_key(&c.vertex).then_some(c.vertex)).collect();
    let glued = glue::glue(&pieces, &windows, &clip_window, eps);
    let mut res = IarResult {
        point: set.point,
        components: Vec::new(),
        provenance: Vec::new(),
        edge_tags: Vec::new(),
        holes: glued.holes.iter().map(|h| h.pts.clone()).collect(),
        stats: ComplexityStats::default(),
        perturbation: None,
        collinear_pairs: Vec::new(),
        constraint_count: set.len(),
        times: StageTimes::default(),
    };
    let mut outer = glued.outer;
    // deterministic order: by lowest-leftmost vertex
    outer.sort_by(|a, b| {
        let ka = lowest(&a.pts);
        let kb = lowest(&b.pts);
        ka.y.total_cmp(&kb.y).then(ka.x.total_cmp(&kb.x))
    });
    let mut stats = ComplexityStats { per_edge: vec![0; poly.len()], ..Default::default() };
    for ring in outer {
        let ring = rotate_to_lowest(ring);
        let kinds = classify_vertices(poly, &ring, &windows, &mut stats, eps);
        res.components.push(SimplePolygon::from_ccw_unchecked(ring.pts).with_tolerance(poly.tolerance()));
        res.edge_tags.push(ring.tags);
        res.provenance.push(kinds);
    }
    stats.per_edge_max = stats.per_edge.iter().copied().max().unwrap_or(0);
    res.stats = stats;
    times.glue = t.elapsed();
    res
}

fn lowest(pts: &[Point2]) -> Point2 {
    pts.iter()
        .copied()
        .min_by(|a, b| a.y.total_cmp(&b.y).then(a.x.total_cmp(&b.x)))
        .unwrap_or_default()
}

fn rotate_to_lowest(ring: TaggedRing) -> TaggedRing {
    let lo = lowest(&ring.pts);
    let k = ring.pts.iter().position(|&q| q == lo).unwrap_or(0);
    let mut pts = ring.pts;
    let mut tags = ring.tags;
    pts.rotate_left(k);
    tags.rotate_left(k);
    TaggedRing::new(pts, tags)
}

fn classify_vertices(
    poly: &SimplePolygon,
    ring: &TaggedRing,
    windows: &HashMap<usize, Chord>,
    stats: &mut ComplexityStats,
    eps: f64,
) -> Vec<VertexKind> {
    let n = ring.len();
    let tol = 10.0 * eps;
    let mut kinds = Vec::with_capacity(n);
    for k in 0..n {
        let q = ring.pts[k];
        let adj = [ring.tags[(k + n - 1) % n], ring.tags[k]];
        // (edge index, is polygon vertex)
        let mut at: Option<(usize, bool)> = None;
        for tag in adj {
            match tag {
                EdgeTag::Boundary(e) => {
                    let s = poly.edge(e);
                    if q.dist(s.a) <= tol {
                        at = Some((e, true));
                    } else if q.dist(s.b) <= tol {
                        at = Some((poly.next(e), true));
                    } else if at.is_none() {
                        at = Some((e, false));
                    }
                }
                EdgeTag::Window(b) => {
                    if let Some(c) = windows.get(&b) {
                        for bp in [c.start, c.end] {
                            if at.is_none() && q.dist(bp.point) <= tol {
                                let vertex = bp.vertex().is_some() || bp.t >= 1.0 - 1e-12;
                                at = Some((bp.edge, vertex));
                            }
                        }
                    }
                }
                _ => {}
            }
        }
        match at {
            Some((e, is_vertex)) => {
                stats.total_vertices += 1;
                if !is_vertex {
                    stats.group1 += 1;
                    stats.per_edge[e] += 1;
                }
                kinds.push(VertexKind::OnPolygonBoundary);
            }
            None => {
                stats.total_vertices += 1;
                stats.group2 += 1;
                kinds.push(VertexKind::Internal);
            }
        }
    }
    kinds
}

fn complements<'a>(set: &'a ConstraintSet, ids: impl Iterator<Item = usize> + 'a) -> impl Iterator<Item = (HalfPlane, EdgeTag)> + 'a {
    ids.map(move |i| (set.constraints[i].plane.complement(), EdgeTag::Clip(i)))
}

fn active_for(set: &ConstraintSet, region: &SpmRegion, n: usize) -> Vec<usize> {
    let Some(v) = region.base else { return Vec::new() };
    set.constraints
        .iter()
        .filter(|c| c.domain.contains_coord_side(v as f64, region.side, n))
        .map(|c| c.id)
        .collect()
}

fn pieces_naive(poly: &SimplePolygon, set: &ConstraintSet) -> Vec<TaggedRing> {
    let n = poly.len();
    let eps = poly.eps();
    set.spm
        .regions
        .par_iter()
        .flat_map_iter(|region| {
            if region.base.is_none() {
                return vec![region.cell.clone()];
            }
            let planes: Vec<(HalfPlane, EdgeTag)> = complements(set, active_for(set, region, n).into_iter()).collect();
            clip_ring_all(&region.cell, &planes, eps)
        })
        .collect()
}

/// Keys of non-root regions: `(base vertex, side)`, in boundary order.
fn region_keys(spm: &ShortestPathMap) -> Vec<(f64, i8)> {
    spm.regions[1..].iter().map(|r| (r.base.unwrap_or(0) as f64, r.side)).collect()
}

fn key_lt(a: (f64, i8), b: (f64, i8)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 < b.1)
}

/// Index ranges of keys inside a domain arc (the arc may wrap).
fn key_ranges(keys: &[(f64, i8)], dom: &SubpolygonRef) -> Vec<(usize, usize)> {
    let (a, b) = (dom.from.coord(), dom.to.coord());
    let lo = keys.partition_point(|&k| !key_lt((a, -1), k));
    let hi = keys.partition_point(|&k| key_lt(k, (b, 1)));
    if a < b {
        if lo < hi {
            vec![(lo, hi)]
        } else {
            vec![]
        }
    } else {
        let mut out = Vec::new();
        if lo < keys.len() {
            out.push((lo, keys.len()));
        }
        if hi > 0 {
            out.push((0, hi));
        }
        out
    }
}

struct SegTree {
    size: usize,
    lists: Vec<Vec<usize>>,
    bbox: Vec<Option<Rect>>,
}

impl SegTree {
    fn new(bboxes: &[Rect]) -> Self {
        let m = bboxes.len();
        let size = m.next_power_of_two().max(1);
        let mut bbox = vec![None; 2 * size];
        for (i, r) in bboxes.iter().enumerate() {
            bbox[size + i] = Some(*r);
        }
        for i in (1..size).rev() {
            bbox[i] = match (bbox[2 * i], bbox[2 * i + 1]) {
                (Some(a), Some(b)) => Some(a.union(&b)),
                (a, b) => a.or(b),
            };
        }
        SegTree { size, lists: vec![Vec::new(); 2 * size], bbox }
    }

    fn insert(&mut self, lo: usize, hi: usize, id: usize) {
        let (mut l, mut r) = (lo + self.size, hi + self.size);
        while l < r {
            if l & 1 == 1 {
                self.lists[l].push(id);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                self.lists[r].push(id);
            }
            l >>= 1;
            r >>= 1;
        }
    }
}

fn is_convex(ring: &TaggedRing, eps: f64) -> bool {
    let n = ring.len();
    (0..n).all(|k| {
        let (a, b, c) = (ring.pts[(k + n - 1) % n], ring.pts[k], ring.pts[(k + 1) % n]);
        (b - a).cross(c - b) >= -eps * (b.dist(a) + c.dist(b))
    })
}

/// Restores cell vertices dropped on runs of collinear cell edges, so each part of the
/// run keeps its own tag.
fn split_collinear(cell: &TaggedRing, ring: TaggedRing, eps: f64) -> TaggedRing {
    let m = cell.len();
    let straight = |k: usize| {
        let (a, b, c) = (cell.pts[(k + m - 1) % m], cell.pts[k], cell.pts[(k + 1) % m]);
        (b - a).cross(c - b).abs() <= eps * (b.dist(a) + c.dist(b)) && (b - a).dot(c - b) > 0.0
    };
    let bends: Vec<usize> = (0..m).filter(|&k| straight(k)).collect();
    if bends.is_empty() {
        return ring;
    }
    let n = ring.len();
    let mut pts = Vec::with_capacity(n + bends.len());
    let mut tags = Vec::with_capacity(n + bends.len());
    for i in 0..n {
        let (a, b) = (ring.pts[i], ring.pts[(i + 1) % n]);
        pts.push(a);
        tags.push(ring.tags[i]);
        if matches!(ring.tags[i], EdgeTag::Clip(_) | EdgeTag::Frame) {
            continue;
        }
        let Some(d) = (b - a).normalized() else { continue };
        let len = a.dist(b);
        let mut inner: Vec<(f64, usize)> = bends
            .iter()
            .filter_map(|&k| {
                let q = cell.pts[k];
                let t = (q - a).dot(d);
                (t > eps && t < len - eps && d.cross(q - a).abs() <= eps).then_some((t, k))
            })
            .collect();
        if inner.is_empty() {
            continue;
        }
        inner.sort_by(|x, y| x.0.total_cmp(&y.0));
        // first part: the cell edge ending at the first inserted vertex
        let l = tags.len() - 1;
        tags[l] = cell.tags[(inner[0].1 + m - 1) % m];
        for &(_, k) in &inner {
            pts.push(cell.pts[k]);
            tags.push(cell.tags[k]);
        }
    }
    TaggedRing::new(pts, tags)
}

fn pieces_optimal(poly: &SimplePolygon, set: &ConstraintSet) -> Vec<TaggedRing> {
    let eps = poly.eps();
    let regions = &set.spm.regions;
    let mut pieces = vec![regions[0].cell.clone()];
    if regions.len() == 1 {
        return pieces;
    }
    let keys = region_keys(&set.spm);
    let bboxes: Vec<Rect> = regions[1..].iter().map(|r| r.bbox).collect();
    let mut tree = SegTree::new(&bboxes);
    for c in &set.constraints {
        for (lo, hi) in key_ranges(&keys, &c.domain) {
            tree.insert(lo, hi, c.id);
        }
    }
    let frame = poly.bbox().expanded(poly.diameter() * 0.01 + 1.0);
    let root = ConvexRegion::from_rect(&frame);
    let ctx = Walk { set, regions: &regions[1..], tree: &tree, eps };
    ctx.visit(1, &root, &mut pieces);
    pieces
}

struct Walk<'a> {
    set: &'a ConstraintSet,
    regions: &'a [SpmRegion],
    tree: &'a SegTree,
    eps: f64,
}

impl Walk<'_> {
    fn visit(&self, node: usize, free: &ConvexRegion, out: &mut Vec<TaggedRing>) {
        let Some(bbox) = self.tree.bbox[node] else { return };
        let tol = 1e-12 * (1.0 + bbox.diameter());
        let mut fresh = Vec::new();
        for &id in &self.tree.lists[node] {
            let g = self.set.constraints[id].plane.complement();
            let (lo, hi) = bbox.signed_dist_range(&g);
            if hi <= tol {
                continue;
            }
            if lo > tol {
                return;
            }
            fresh.push((g, EdgeTag::Clip(id)));
        }
        let inherited = free.tagged_planes().filter(|(h, tag)| {
            *tag != EdgeTag::Frame && bbox.signed_dist_range(h).1 > tol
        });
        let mut hs: Vec<(HalfPlane, EdgeTag)> = inherited.collect();
        hs.extend(fresh);
        let framed = bbox.expanded(0.5 * bbox.diameter() + 1e-9);
        let mut all = hs.clone();
        all.extend(hpi::rect_planes(&framed));
        let Some(here) = hpi::intersect(all) else { return };
        if node >= self.tree.size {
            let i = node - self.tree.size;
            if let Some(r) = self.regions.get(i) {
                self.leaf(r, &here, out);
            }
            return;
        }
        self.visit(2 * node, &here, out);
        self.visit(2 * node + 1, &here, out);
    }

    fn leaf(&self, region: &SpmRegion, free: &ConvexRegion, out: &mut Vec<TaggedRing>) {
        let tol = 1e-12 * (1.0 + region.bbox.diameter());
        let planes: Vec<(HalfPlane, EdgeTag)> = free
            .tagged_planes()
            .filter(|(h, tag)| *tag != EdgeTag::Frame && region.bbox.signed_dist_range(h).1 > tol)
            .collect();
        if planes.is_empty() {
            out.push(region.cell.clone());
            return;
        }
        if is_convex(&region.cell, self.eps) {
            let cell = &region.cell;
            let m = cell.len();
            let mut cur = TaggedConvex { ring: free.ring.clone() };
            for k in 0..m {
                let Ok(h) = HalfPlane::left_of(cell.pts[k], cell.pts[(k + 1) % m]) else { continue };
                cur = cur.clip(&h, cell.tags[k], self.eps);
                if cur.is_empty() {
                    return;
                }
            }
            out.push(split_collinear(cell, cur.ring, self.eps));
            return;
        }
        out.extend(clip_ring_all(&region.cell, &planes, self.eps));
    }
}
