use beacon_iar::generators::{random_interior_point, random_polygon};
use beacon_iar::polygon::{Chord, Triangulation, TriangulationMethod};
use beacon_iar::SimplePolygon;
use proptest::prelude::*;

fn tri_area(poly: &SimplePolygon, tri: &Triangulation) -> f64 {
    (0..tri.len())
        .map(|t| {
            let [a, b, c] = tri.points(poly, t);
            0.5 * (b - a).cross(c - a)
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn split_pieces_are_valid_and_partition_area(n in 4usize..40, seed in 0u64..1_000_000, pick in 0usize..1000) {
        let poly = random_polygon(n, seed);
        let tri = poly.triangulate();
        let v = pick % poly.len();
        let (a, b) = (poly.vertex(poly.prev(v)) - poly.vertex(v), poly.vertex(poly.next(v)) - poly.vertex(v));
        let (a, b) = (a.normalized().unwrap(), b.normalized().unwrap());
        // bisector of the interior angle
        let mut d = (a + b).normalized().unwrap_or(a.perp());
        if !poly.direction_enters_at_vertex(v, d) {
            d = -d;
        }
        prop_assume!(poly.direction_strictly_inside_at_vertex(v, d, 1e-6));
        let end = poly.shoot_from_vertex(&tri, v, d).unwrap();
        prop_assume!(end.point.dist(poly.vertex(v)) > 1e3 * poly.eps());
        let chord = Chord { start: poly.vertex_point(v), end };
        let (l, r) = poly.split(&chord).unwrap();
        let (pl, pr) = (poly.materialize(&l), poly.materialize(&r));
        prop_assert!(SimplePolygon::new(poly.subpolygon_ring(&l)).is_ok());
        prop_assert!(SimplePolygon::new(poly.subpolygon_ring(&r)).is_ok());
        let sum = pl.area() + pr.area();
        prop_assert!((sum - poly.area()).abs() <= 1e-9 * poly.area(), "{} vs {}", sum, poly.area());
    }

    #[test]
    fn deadwedge_planes_hold_their_edges(n in 4usize..40, seed in 0u64..1_000_000) {
        let poly = random_polygon(n, seed);
        let eps = poly.eps();
        for r in poly.reflex_vertices() {
            let w = poly.deadwedge(r).unwrap();
            for (k, far) in [poly.prev(r), poly.next(r)].into_iter().enumerate() {
                prop_assert!(w.planes[k].signed_dist(poly.vertex(r)).abs() <= eps);
                prop_assert!(w.planes[k].signed_dist(poly.vertex(far)) < -eps);
            }
        }
    }

    #[test]
    fn visibility_is_symmetric(n in 4usize..40, seed in 0u64..1_000_000) {
        let poly = random_polygon(n, seed);
        let pts: Vec<_> = (0..8).map(|k| random_interior_point(&poly, seed ^ (k * 7919))).chain(poly.vertices().iter().copied().take(8)).collect();
        for &a in &pts {
            for &b in &pts {
                prop_assert_eq!(poly.sees(a, b), poly.sees(b, a));
            }
        }
    }

    #[test]
    fn triangulations_cover_the_polygon(n in 3usize..80, seed in 0u64..1_000_000) {
        let poly = random_polygon(n, seed);
        for m in [TriangulationMethod::MonotoneSweep, TriangulationMethod::EarClipping] {
            let tri = Triangulation::new(&poly, m);
            prop_assert_eq!(tri.len(), poly.len() - 2);
            let a = tri_area(&poly, &tri);
            prop_assert!((a - poly.area()).abs() <= 1e-9 * poly.area());
            prop_assert_eq!(tri.dual_edge_count(), tri.len() - 1);
            prop_assert!(tri.dual_connected());
        }
    }
}
