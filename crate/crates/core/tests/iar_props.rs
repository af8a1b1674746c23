use beacon_iar::attraction::{default_budget, simulate};
use beacon_iar::generators::{random_interior_point, random_polygon};
use beacon_iar::geom::{Point2, Segment};
use beacon_iar::iar::{iar_optimal, CaseTag, ConstraintSet};
use beacon_iar::polygon::Containment;

fn on_line(q: Point2, (o, d): (Point2, Point2), tol: f64) -> bool {
    let d = d.normalized().unwrap();
    (q - o).cross(d).abs() <= tol
}

#[test]
fn iar_is_convex_relative_to_the_polygon() {
    for seed in 0..20u64 {
        let poly = random_polygon(10 + (seed as usize * 3) % 20, seed);
        let p = random_interior_point(&poly, seed);
        let res = iar_optimal(&poly, p).unwrap();
        let tol = 1e3 * poly.eps();
        let inside: Vec<Point2> = (0..400u64)
            .map(|k| random_interior_point(&poly, seed * 100_000 + k))
            .filter(|&q| res.contains(q))
            .collect();
        let mut pairs = 0;
        'outer: for (i, &a) in inside.iter().enumerate() {
            for &b in &inside[i + 1..] {
                if !poly.sees(a, b) {
                    continue;
                }
                for k in 1..16 {
                    let q = a.lerp(b, k as f64 / 16.0);
                    assert!(res.contains(q) || res.boundary_dist(q) <= tol, "seed {seed}: {a} {b} at {q}");
                }
                pairs += 1;
                if pairs == 500 {
                    break 'outer;
                }
            }
        }
        assert!(pairs > 0 || inside.len() < 2, "seed {seed}: no visible pairs");
    }
}

#[test]
fn internal_edges_lie_on_one_effective_line() {
    let mut checked = 0;
    for seed in 0..60u64 {
        let poly = random_polygon(8 + (seed as usize * 5) % 25, seed);
        let p = random_interior_point(&poly, seed);
        let res = iar_optimal(&poly, p).unwrap();
        if !res.collinear_pairs.is_empty() {
            continue;
        }
        let set = ConstraintSet::new(&poly, res.point).unwrap();
        let tol = poly.eps();
        for (a, b, id) in res.internal_edges() {
            let mut owners: Vec<(u64, u64, usize)> = set
                .constraints
                .iter()
                .filter(|c| on_line(a, c.effective_line(), tol) && on_line(b, c.effective_line(), tol))
                .map(|c| (c.parent.x.to_bits(), c.parent.y.to_bits(), c.vertex))
                .collect();
            owners.sort_unstable();
            owners.dedup();
            assert_eq!(owners.len(), 1, "seed {seed}: edge {a} {b} on {} tree edges", owners.len());
            let own = &set.constraints[id];
            assert_eq!(owners[0], (own.parent.x.to_bits(), own.parent.y.to_bits(), own.vertex));
            checked += 1;
        }
    }
    assert!(checked > 100, "only {checked} internal edges");
}

#[test]
fn attracting_beacons_on_a_line_pass_both_vertices() {
    let mut hits = 0;
    for seed in 0..80u64 {
        let poly = random_polygon(8 + (seed as usize * 5) % 25, seed);
        let p = random_interior_point(&poly, seed);
        let set = ConstraintSet::new(&poly, p).unwrap();
        let eps = poly.eps();
        for c in set.constraints.iter().filter(|c| c.case_tag != CaseTag::Case2) {
            let (u, v) = (c.parent, poly.vertex(c.vertex));
            let Some(dir) = (v - u).normalized() else { continue };
            let wedge = poly.deadwedge(c.vertex).unwrap();
            let Ok(end) = poly.ray_shoot(v, dir) else { continue };
            let reach = end.point.dist(v);
            for k in 1..10 {
                let b = v + dir * (reach * k as f64 / 10.0);
                if poly.contains(b) != Containment::Interior || !wedge.contains_strictly(b, eps) {
                    continue;
                }
                let t = simulate(&poly, p, b, default_budget(poly.len())).unwrap();
                if !t.reached() {
                    continue;
                }
                let near = |x: Point2| x.dist(p) <= eps || t.edges.iter().any(|e| Segment::new(e.from, e.to).dist_to(x) <= eps);
                assert!(near(u) && near(v), "seed {seed}: beacon {b} misses {u} or {v}: {:?}", t.event_points());
                hits += 1;
            }
        }
    }
    assert!(hits > 20, "only {hits} beacons");
}
