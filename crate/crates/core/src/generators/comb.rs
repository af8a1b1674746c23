//! Polygons whose inverse attraction region has many components: rotated copies of a
//! two-line zigzag arm around a central room, certified by the sampling oracle.

use rayon::prelude::*;

use crate::attraction::attracts;
use crate::error::{Error, Result};
use crate::generators::zigzag::zigzag_from_k;
use crate::geom::{Point2, Rect};
use crate::iar::iar_optimal;
use crate::polygon::{Containment, SimplePolygon};

/// The arm: an open CCW chain whose first and last vertices bound the opening, with the
/// reflex vertex that the root must see through the opening.
#[derive(Debug, Clone)]
pub struct CombTemplate {
    pub chain: Vec<Point2>,
    pub anchor: Point2,
    pub pivot: Point2,
}

/// An instance together with its certificate.
#[derive(Debug, Clone)]
pub struct CombInstance {
    pub polygon: SimplePolygon,
    pub p: Point2,
    pub arms: usize,
    /// Bounding boxes of the arms, where the detached components live.
    pub arm_boxes: Vec<Rect>,
    /// Components counted by the oracle and by the construction (the smaller one).
    pub certified_components: usize,
}

/// The zigzag instance for two lines, opened at its first corridor's cap.
pub fn comb_template() -> Result<CombTemplate> {
    let z = zigzag_from_k(2)?;
    let chain = z.polygon.vertices().to_vec();
    let n = chain.len();
    // chain runs p, ..., v_1, T_1; the cap T_1 -> p becomes the opening
    let (t1, p0) = (chain[n - 1], chain[0]);
    let anchor = t1.lerp(p0, 0.1);
    let pivot = chain[n - 2];
    Ok(CombTemplate { chain, anchor, pivot })
}

/// Length of the neck joining each arm's opening to the room.
pub const COMB_NECK: f64 = 40.0;

/// Places `arms` copies of the template at distance `radius` from the origin. The room
/// is a star whose spikes end in straight necks along the root's line of sight to
/// each pivot, so pulls towards an arm slide into its neck.
pub fn comb_layout(t: &CombTemplate, arms: usize, radius: f64) -> Result<SimplePolygon> {
    let dl = (t.anchor - t.pivot).normalized().ok_or(Error::DegenerateInput("degenerate comb template"))?;
    let base = dl.y.atan2(dl.x);
    let step = std::f64::consts::TAU / arms as f64;
    let valley = 0.5 * (radius - COMB_NECK);
    let mut verts = Vec::with_capacity(arms * (t.chain.len() + 3));
    for j in 0..arms {
        let phi = step * j as f64;
        let radial = Point2::new(phi.cos(), phi.sin());
        let (s, c) = (phi + std::f64::consts::PI - base).sin_cos();
        let at = radial * radius;
        let arm: Vec<Point2> = t
            .chain
            .iter()
            .map(|&q| {
                let d = q - t.anchor;
                at + Point2::new(c * d.x - s * d.y, s * d.x + c * d.y)
            })
            .collect();
        let inward = radial * -COMB_NECK;
        verts.push(arm[0] + inward);
        verts.extend_from_slice(&arm);
        verts.push(arm[arm.len() - 1] + inward);
        let mid = phi + 0.5 * step;
        verts.push(Point2::new(mid.cos(), mid.sin()) * valley);
    }
    SimplePolygon::new(verts)
}

/// Components of the attracting grid samples, joined through grid adjacency with
/// mutual visibility and through the root for samples that see it.
pub fn oracle_component_count(poly: &SimplePolygon, p: Point2, boxes: &[Rect], resolution: f64) -> Result<usize> {
    let mut pts: Vec<(usize, i64, i64, Point2)> = Vec::new();
    for (b, r) in boxes.iter().enumerate() {
        let nx = ((r.max.x - r.min.x) / resolution).ceil() as i64;
        let ny = ((r.max.y - r.min.y) / resolution).ceil() as i64;
        for j in 0..=ny {
            for i in 0..=nx {
                let q = Point2::new(r.min.x + i as f64 * resolution, r.min.y + j as f64 * resolution);
                if poly.contains(q) == Containment::Interior {
                    pts.push((b, i, j, q));
                }
            }
        }
    }
    let labels: Vec<bool> = pts
        .par_iter()
        .map(|&(_, _, _, q)| attracts(poly, q, p))
        .collect::<Result<_>>()?;
    let idx: std::collections::HashMap<(usize, i64, i64), usize> =
        pts.iter().enumerate().map(|(k, &(b, i, j, _))| ((b, i, j), k)).collect();
    let m = pts.len();
    // node m is the root
    let mut uf: Vec<usize> = (0..=m).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let join = |uf: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(uf, a), find(uf, b));
        if ra != rb {
            uf[ra] = rb;
        }
    };
    for (k, &(b, i, j, q)) in pts.iter().enumerate() {
        if !labels[k] {
            continue;
        }
        if poly.sees(p, q) {
            join(&mut uf, k, m);
        }
        for (di, dj) in [(1, 0), (0, 1)] {
            if let Some(&o) = idx.get(&(b, i + di, j + dj)) {
                if labels[o] && poly.sees(q, pts[o].3) {
                    join(&mut uf, k, o);
                }
            }
        }
    }
    let mut roots: Vec<usize> = (0..m).filter(|&k| labels[k]).map(|k| find(&mut uf, k)).collect();
    roots.push(find(&mut uf, m));
    roots.sort_unstable();
    roots.dedup();
    Ok(roots.len())
}

/// A polygon whose IAR of the returned point has at least `k` components.
pub fn comb_polygon(k: usize) -> Result<CombInstance> {
    if k <= 1 {
        let verts = (0..6)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / 6.0;
                Point2::new(10.0 * a.cos(), 10.0 * a.sin())
            })
            .collect();
        return Ok(CombInstance {
            polygon: SimplePolygon::new(verts)?,
            p: Point2::new(0.0, 0.0),
            arms: 0,
            arm_boxes: Vec::new(),
            certified_components: 1,
        });
    }
    let t = comb_template()?;
    let arms = k.max(3);
    let span = t.chain.iter().map(|q| q.dist(t.anchor)).fold(0.0, f64::max);
    let mut radius = (1.5 * span / (std::f64::consts::PI / arms as f64).tan()).max(3.0 * span) + COMB_NECK;
    let mut found = 0;
    for _ in 0..4 {
        if let Ok(poly) = comb_layout(&t, arms, radius) {
            let p = Point2::new(0.0, 0.0);
            let m = t.chain.len() + 3;
            let boxes: Vec<Rect> = (0..arms)
                .filter_map(|j| Rect::from_points(poly.vertices()[j * m + 1..(j + 1) * m - 2].iter().copied()))
                .collect();
            let engine = iar_optimal(&poly, p)?.components.len();
            let oracle = oracle_component_count(&poly, p, &boxes, 0.5)?;
            found = engine.min(oracle);
            if found >= k {
                return Ok(CombInstance { polygon: poly, p, arms, arm_boxes: boxes, certified_components: found });
            }
        }
        radius *= 1.5;
    }
    Err(Error::CertificationFailed { wanted: k, found })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_is_convex() {
        let c = comb_polygon(1).unwrap();
        assert!(c.polygon.reflex_vertices().is_empty());
    }

    #[test]
    fn two_and_eight() {
        for k in [2, 8] {
            let c = comb_polygon(k).unwrap();
            assert!(c.certified_components >= k, "k={k}: {}", c.certified_components);
            let r = iar_optimal(&c.polygon, c.p).unwrap();
            assert!(r.components.len() >= k);
        }
    }

    #[test]
    fn wide_room_keeps_every_arm() {
        let t = comb_template().unwrap();
        let poly = comb_layout(&t, 5, 300.0).unwrap();
        let r = iar_optimal(&poly, Point2::new(0.0, 0.0)).unwrap();
        assert_eq!(r.components.len(), 6);
    }
}
