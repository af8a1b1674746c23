use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::Point2;
use crate::polygon::{find_crossing, SimplePolygon};

const SCALE: f64 = 100.0;

/// Hilbert curve index of `(x, y)` on a `2^16` grid.
fn hilbert_index(mut x: u32, mut y: u32) -> u64 {
    let order = 1u32 << 16;
    let mut d: u64 = 0;
    let mut s = order / 2;
    while s > 0 {
        let rx = u32::from(x & s > 0);
        let ry = u32::from(y & s > 0);
        d += u64::from(s) * u64::from(s) * u64::from((3 * rx) ^ ry);
        if ry == 0 {
            if rx == 1 {
                x = order - 1 - x;
                y = order - 1 - y;
            }
            std::mem::swap(&mut x, &mut y);
        }
        s /= 2;
    }
    d
}

/// A random simple polygon with `n` vertices in `[0,100]^2`: random points visited in
/// Hilbert order, then untangled by 2-opt moves. Deterministic per seed.
pub fn random_polygon(n: usize, seed: u64) -> SimplePolygon {
    assert!(n >= 3, "random_polygon needs n >= 3");
    let mut attempt = 0u64;
    loop {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
        let mut pts: Vec<Point2> =
            (0..n).map(|_| Point2::new(rng.gen::<f64>() * SCALE, rng.gen::<f64>() * SCALE)).collect();
        let q = |v: f64| ((v / SCALE) * 65535.0).round().clamp(0.0, 65535.0) as u32;
        pts.sort_by_key(|p| hilbert_index(q(p.x), q(p.y)));
        if let Some(poly) = untangle(pts) {
            return poly;
        }
        attempt += 1;
    }
}

fn untangle(mut pts: Vec<Point2>) -> Option<SimplePolygon> {
    let n = pts.len();
    for _ in 0..(50 * n * n).max(1000) {
        let probe = SimplePolygon::from_ccw_unchecked(pts.clone());
        match find_crossing(&probe) {
            None => return SimplePolygon::new(pts).ok(),
            Some((i, j)) => {
                let (i, j) = (i.min(j), i.max(j));
                if j == i + 1 || (i == 0 && j == n - 1) {
                    // adjacent edges overlapping: degenerate sample
                    return None;
                }
                pts[i + 1..=j].reverse();
            }
        }
    }
    None
}

/// A random convex polygon with `n` vertices on a random ellipse. Deterministic per seed.
pub fn convex_polygon(n: usize, seed: u64) -> SimplePolygon {
    assert!(n >= 3, "convex_polygon needs n >= 3");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b) = (rng.gen_range(20.0..50.0), rng.gen_range(20.0..50.0));
    let rot: f64 = rng.gen_range(0.0..std::f64::consts::PI);
    let (c, s) = (rot.cos(), rot.sin());
    let tau = std::f64::consts::TAU;
    loop {
        let mut ang: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * tau).collect();
        ang.sort_by(f64::total_cmp);
        let min_gap = ang
            .windows(2)
            .map(|w| w[1] - w[0])
            .chain(std::iter::once(ang[0] + tau - ang[n - 1]))
            .fold(f64::INFINITY, f64::min);
        if min_gap < 1e-3 / n as f64 {
            continue;
        }
        let pts: Vec<Point2> = ang
            .iter()
            .map(|&t| {
                let (x, y) = (a * t.cos(), b * t.sin());
                Point2::new(50.0 + c * x - s * y, 50.0 + s * x + c * y)
            })
            .collect();
        if let Ok(p) = SimplePolygon::new(pts) {
            if p.reflex_vertices().is_empty() {
                return p;
            }
        }
    }
}

/// A uniformly random point strictly inside `poly`, area-weighted over a triangulation.
pub fn random_interior_point(poly: &SimplePolygon, seed: u64) -> Point2 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0005_EED0_F1A7);
    let tri = poly.triangulate();
    let tris: Vec<[Point2; 3]> = (0..tri.len()).map(|t| tri.points(poly, t)).collect();
    let areas: Vec<f64> = tris.iter().map(|[a, b, c]| 0.5 * (*b - *a).cross(*c - *a).abs()).collect();
    let total: f64 = areas.iter().sum();
    loop {
        let mut pick = rng.gen::<f64>() * total;
        let mut k = 0;
        while k + 1 < areas.len() && pick > areas[k] {
            pick -= areas[k];
            k += 1;
        }
        let [a, b, c] = tris[k];
        let (mut s, mut t): (f64, f64) = (rng.gen(), rng.gen());
        if s + t > 1.0 {
            s = 1.0 - s;
            t = 1.0 - t;
        }
        let q = a + (b - a) * s + (c - a) * t;
        if poly.contains(q) == crate::polygon::Containment::Interior && poly.boundary_dist(q) > poly.eps() * 100.0 {
            return q;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_is_valid_and_deterministic() {
        for n in [3, 4, 5, 10, 30, 200] {
            let a = random_polygon(n, 7);
            let b = random_polygon(n, 7);
            assert_eq!(a.len(), n);
            assert_eq!(a.vertices(), b.vertices());
            assert!(SimplePolygon::new(a.vertices().to_vec()).is_ok());
        }
        assert_ne!(random_polygon(30, 1).vertices(), random_polygon(30, 2).vertices());
    }

    #[test]
    fn convex_has_no_reflex() {
        for seed in 0..20 {
            let p = convex_polygon(3 + seed as usize * 3, seed);
            assert!(p.reflex_vertices().is_empty());
        }
    }
}
