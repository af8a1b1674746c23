//! Event-driven beacon attraction: pull along the ray to the beacon, slide along edges
//! towards the beacon's projection, stop at dead points.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::polygon::{BoundaryPoint, Chord, Containment, SimplePolygon};
use crate::shortest_paths::Geodesics;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveKind {
    Pull,
    Slide,
}

/// One straight piece of a trajectory. Slides name the polygon edge carrying them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryEdge {
    pub kind: MoveKind,
    pub from: Point2,
    pub to: Point2,
    pub edge: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    ReachedBeacon,
    DeadPoint(Point2),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub start: Point2,
    pub beacon: Point2,
    pub edges: Vec<TrajectoryEdge>,
    pub outcome: Outcome,
}

impl Trajectory {
    pub fn reached(&self) -> bool {
        self.outcome == Outcome::ReachedBeacon
    }

    /// Start point followed by the endpoint of every edge.
    pub fn event_points(&self) -> Vec<Point2> {
        std::iter::once(self.start).chain(self.edges.iter().map(|e| e.to)).collect()
    }

    pub fn end(&self) -> Point2 {
        self.edges.last().map_or(self.start, |e| e.to)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum State {
    Interior,
    OnEdge(usize),
    AtVertex(usize),
}

fn state_of(bp: &BoundaryPoint) -> State {
    match bp.vertex() {
        Some(i) => State::AtVertex(i),
        None => State::OnEdge(bp.edge),
    }
}

/// Default event budget for a polygon with `n` vertices.
pub fn default_budget(n: usize) -> usize {
    (10 * n).max(64)
}

/// Simulates the attraction of `start` by `beacon`.
pub fn simulate(poly: &SimplePolygon, start: Point2, beacon: Point2, budget: usize) -> Result<Trajectory> {
    let tol = poly.tolerance();
    let eps_dist = tol.eps_dist;
    let tiny = 1e-12;
    let mut state = match poly.contains(start) {
        Containment::Exterior => return Err(Error::PointOutsidePolygon(start)),
        Containment::Interior => State::Interior,
        Containment::Boundary => state_of(&poly.locate_on_boundary(start).expect("boundary point")),
    };
    if poly.contains(beacon) == Containment::Exterior {
        return Err(Error::PointOutsidePolygon(beacon));
    }
    let mut pos = start;
    let mut edges: Vec<TrajectoryEdge> = Vec::new();
    let mut stalls = 0;
    let finish = |edges: Vec<TrajectoryEdge>, outcome| Trajectory { start, beacon, edges, outcome };

    for _ in 0..budget {
        let dist = pos.dist(beacon);
        if dist <= eps_dist {
            return Ok(finish(edges, Outcome::ReachedBeacon));
        }
        let d = (beacon - pos) * (1.0 / dist);
        let pull_ok = match state {
            State::Interior => true,
            State::OnEdge(e) => {
                let s = poly.edge(e);
                let u = (s.b - s.a).normalized().expect("non-degenerate edge");
                u.cross(d) >= -tiny
            }
            State::AtVertex(i) => poly.direction_enters_at_vertex(i, d),
        };
        let before = dist;
        if pull_ok {
            match poly.first_exit(pos, d, dist) {
                None => {
                    edges.push(TrajectoryEdge { kind: MoveKind::Pull, from: pos, to: beacon, edge: None });
                    return Ok(finish(edges, Outcome::ReachedBeacon));
                }
                Some(ex) => {
                    let to = if ex.at.point.dist(beacon) <= eps_dist { beacon } else { ex.at.point };
                    if to != pos {
                        edges.push(TrajectoryEdge { kind: MoveKind::Pull, from: pos, to, edge: None });
                    }
                    pos = to;
                    state = state_of(&ex.at);
                }
            }
        } else {
            // pick the slide edge
            let (edge, forward) = match state {
                State::Interior => unreachable!("pull is always feasible in the interior"),
                State::OnEdge(e) => {
                    let s = poly.edge(e);
                    (e, (beacon - pos).dot(s.b - s.a) > 0.0)
                }
                State::AtVertex(i) => {
                    let v = poly.vertex(i);
                    let next = (poly.vertex(poly.next(i)) - v).normalized().expect("edge");
                    let prev = (poly.vertex(poly.prev(i)) - v).normalized().expect("edge");
                    let (cn, cp) = (next.dot(d), prev.dot(d));
                    if cn.max(cp) <= tiny {
                        return Ok(finish(edges, Outcome::DeadPoint(pos)));
                    }
                    if cn >= cp {
                        (i, true)
                    } else {
                        (poly.prev(i), false)
                    }
                }
            };
            let s = poly.edge(edge);
            let u = s.b - s.a;
            let len2 = u.dot(u);
            let t_pos = (pos - s.a).dot(u) / len2;
            let t_h = (beacon - s.a).dot(u) / len2;
            let moving = (t_h - t_pos) * len2.sqrt();
            if moving.abs() <= eps_dist || (moving > 0.0) != forward {
                return Ok(finish(edges, Outcome::DeadPoint(pos)));
            }
            let (to, next_state, dead) = if forward && t_h >= 1.0 {
                (s.b, State::AtVertex(poly.next(edge)), false)
            } else if !forward && t_h <= 0.0 {
                (s.a, State::AtVertex(edge), false)
            } else {
                let h = s.a.lerp(s.b, t_h);
                let bp = poly.boundary_point(edge, t_h);
                if bp.vertex().is_some() {
                    (bp.point, state_of(&bp), false)
                } else {
                    (h, State::OnEdge(edge), true)
                }
            };
            edges.push(TrajectoryEdge { kind: MoveKind::Slide, from: pos, to, edge: Some(edge) });
            pos = to;
            state = next_state;
            if dead {
                return Ok(finish(edges, Outcome::DeadPoint(pos)));
            }
        }
        if before - pos.dist(beacon) < eps_dist {
            stalls += 1;
            if stalls >= 2 {
                return Ok(finish(edges, Outcome::DeadPoint(pos)));
            }
        } else {
            stalls = 0;
        }
    }
    Err(Error::BudgetExceeded(budget))
}

/// Whether `beacon` attracts `point`.
pub fn attracts(poly: &SimplePolygon, beacon: Point2, point: Point2) -> Result<bool> {
    Ok(simulate(poly, point, beacon, default_budget(poly.len()))?.reached())
}

/// The split edge a reflex vertex introduces for a beacon in its deadwedge.
pub fn split_edge(poly: &SimplePolygon, r: usize, beacon: Point2) -> Result<Option<Chord>> {
    let wedge = poly.deadwedge(r)?;
    let eps = poly.eps();
    if !wedge.contains(beacon, eps) {
        return Ok(None);
    }
    let v = poly.vertex(r);
    let Some(dir) = (v - beacon).normalized() else {
        return Ok(None);
    };
    let reach = 4.0 * poly.diameter() + 1.0;
    Ok(poly
        .first_exit(v, dir, reach)
        .map(|ex| Chord { start: poly.vertex_point(r), end: ex.at }))
}

/// Sampling grid for the brute-force inverse attraction oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleGrid {
    pub resolution: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub point: Point2,
    pub attracts: bool,
}

/// Grid points `bbox.min + (i, j) * resolution`, row-major, strictly inside the
/// polygon and farther than `margin` from its boundary.
pub fn grid_points(poly: &SimplePolygon, grid: SampleGrid) -> Vec<Point2> {
    assert!(grid.resolution > 0.0 && grid.margin >= 0.0, "invalid sample grid");
    let bb = poly.bbox();
    let nx = ((bb.max.x - bb.min.x) / grid.resolution).floor() as usize;
    let ny = ((bb.max.y - bb.min.y) / grid.resolution).floor() as usize;
    let mut out = Vec::new();
    for j in 0..=ny {
        for i in 0..=nx {
            let q = Point2::new(bb.min.x + i as f64 * grid.resolution, bb.min.y + j as f64 * grid.resolution);
            if poly.contains(q) == Containment::Interior && poly.boundary_dist(q) > grid.margin {
                out.push(q);
            }
        }
    }
    out
}

/// Labels every grid point `q` by whether a beacon at `q` attracts `p`.
pub fn sample_inverse_attraction(poly: &SimplePolygon, p: Point2, grid: SampleGrid) -> Result<Vec<Sample>> {
    if poly.contains(p) == Containment::Exterior {
        return Err(Error::PointOutsidePolygon(p));
    }
    grid_points(poly, grid)
        .into_par_iter()
        .map(|q| Ok(Sample { point: q, attracts: attracts(poly, q, p)? }))
        .collect()
}

/// Counts of invariant violations along one trajectory.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct InvariantReport {
    pub distance: usize,
    pub angle: usize,
    pub geodesic: usize,
}

impl InvariantReport {
    pub fn total(&self) -> usize {
        self.distance + self.angle + self.geodesic
    }

    pub fn add(&mut self, o: InvariantReport) {
        self.distance += o.distance;
        self.angle += o.angle;
        self.geodesic += o.geodesic;
    }
}

/// Checks distance monotonicity, the pull/slide angle condition and monotone geodesic
/// distance from the start at every event point.
pub fn check_trajectory(geo: Option<&Geodesics>, traj: &Trajectory, tol: f64) -> InvariantReport {
    let mut rep = InvariantReport::default();
    let pts = traj.event_points();
    for w in pts.windows(2) {
        if w[1].dist(traj.beacon) >= w[0].dist(traj.beacon) + tol {
            rep.distance += 1;
        }
    }
    for w in traj.edges.windows(2) {
        if w[0].kind == w[1].kind {
            continue;
        }
        let a = (w[0].to - w[0].from).normalized();
        let b = (w[1].to - w[1].from).normalized();
        if let (Some(a), Some(b)) = (a, b) {
            if a.dot(b) < -tol {
                rep.angle += 1;
            }
        }
    }
    if let Some(geo) = geo {
        let mut last = 0.0;
        for &q in &pts[1..] {
            let Ok(g) = geo.distance(traj.start, q) else {
                rep.geodesic += 1;
                continue;
            };
            if g < last - tol {
                rep.geodesic += 1;
            }
            last = g;
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn close(a: Point2, b: Point2) -> bool {
        a.dist(b) < 1e-9
    }

    #[test]
    fn square_single_pull() {
        let t = simulate(&square(), p(1., 1.), p(3., 3.), 64).unwrap();
        assert_eq!(t.edges.len(), 1);
        assert_eq!(t.edges[0].kind, MoveKind::Pull);
        assert!(t.reached());
    }

    #[test]
    fn l_polygon_pull_slide_pull() {
        let t = simulate(&l_polygon(), p(0.5, 1.), p(3., 3.), 64).unwrap();
        let kinds: Vec<MoveKind> = t.edges.iter().map(|e| e.kind).collect();
        assert_eq!(kinds, vec![MoveKind::Pull, MoveKind::Slide, MoveKind::Pull]);
        assert!(close(t.edges[0].to, p(1.75, 2.)));
        assert!(close(t.edges[1].to, p(2., 2.)));
        assert!(close(t.edges[2].to, p(3., 3.)));
        assert!(t.reached());
    }

    #[test]
    fn spike6_dead_point() {
        let t = simulate(&spike6(), p(0.5, 0.5), p(0.5, 5.), 64).unwrap();
        assert_eq!(t.edges.len(), 2);
        assert!(close(t.edges[0].to, p(0.5, 13. / 6.)));
        assert_eq!(t.edges[1].kind, MoveKind::Slide);
        // projection of the beacon on the line y = 2 + x/3
        assert!(close(t.edges[1].to, p(1.35, 2.45)));
        match t.outcome {
            Outcome::DeadPoint(d) => assert!(close(d, p(1.35, 2.45))),
            o => panic!("unexpected {o:?}"),
        }
    }

    #[test]
    fn attracts_examples() {
        let s = spike6();
        assert!(!attracts(&s, p(0.5, 5.), p(0.5, 0.5)).unwrap());
        assert!(attracts(&s, p(2.5, 5.5), p(0.5, 0.5)).unwrap());
        let t = simulate(&s, p(0.5, 0.5), p(2.5, 5.5), 64).unwrap();
        assert!(t.edges[0].to.dist(p(1.269, 2.423)) < 1e-3);
        assert!(close(t.edges[1].to, p(3., 3.)));
    }

    #[test]
    fn attraction_is_not_symmetric() {
        let s = spike6();
        let pts = grid_points(&s, SampleGrid { resolution: 0.5, margin: 0.01 });
        let witness = pts.iter().any(|&a| {
            pts.iter()
                .any(|&b| attracts(&s, a, b).unwrap() != attracts(&s, b, a).unwrap())
        });
        assert!(witness);
    }

    #[test]
    fn outside_points_rejected() {
        assert!(matches!(simulate(&square(), p(5., 5.), p(1., 1.), 64), Err(Error::PointOutsidePolygon(_))));
    }

    #[test]
    fn split_edge_examples() {
        let s = spike6();
        let c = split_edge(&s, 5, p(0.2, 4.6)).unwrap().unwrap();
        assert!(c.end.point.dist(p(8., 3. - 1.6 * 5. / 2.8)) < 1e-9);
        assert!(split_edge(&s, 5, p(6., 1.)).unwrap().is_none());
        assert!(split_edge(&l_polygon(), 4, p(3., 3.)).unwrap().is_none());
        assert!(matches!(split_edge(&s, 0, p(1., 1.)), Err(Error::NotReflex(0))));
    }

    #[test]
    fn sampling_examples() {
        let sq = square();
        let all = sample_inverse_attraction(&sq, p(2., 2.), SampleGrid { resolution: 0.5, margin: 0.0 }).unwrap();
        assert!(!all.is_empty() && all.iter().all(|s| s.attracts));
        let s = spike6();
        let samples = sample_inverse_attraction(&s, p(0.5, 0.5), SampleGrid { resolution: 0.25, margin: 0.0 }).unwrap();
        let label = |q: Point2| samples.iter().find(|s| close(s.point, q)).unwrap().attracts;
        assert!(!label(p(0.5, 5.)));
        assert!(label(p(2.5, 5.5)));
        let none = sample_inverse_attraction(&sq, p(2., 2.), SampleGrid { resolution: 10.0, margin: 0.0 }).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn invariants_hold_on_fixtures() {
        for poly in [spike6(), l_polygon()] {
            let geo = Geodesics::new(&poly);
            let pts = grid_points(&poly, SampleGrid { resolution: 0.5, margin: 0.01 });
            for &a in &pts {
                for &b in pts.iter().step_by(7) {
                    let t = simulate(&poly, a, b, 64).unwrap();
                    assert_eq!(check_trajectory(Some(&geo), &t, 1e-7).total(), 0);
                }
            }
        }
    }
}
