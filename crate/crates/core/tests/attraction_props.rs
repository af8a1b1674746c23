use beacon_iar::attraction::{check_trajectory, default_budget, simulate, MoveKind, Outcome};
use beacon_iar::fixtures::{l_polygon, spike6};
use beacon_iar::generators::{random_interior_point, random_polygon};
use beacon_iar::geom::Point2;
use beacon_iar::shortest_paths::Geodesics;
use beacon_iar::SimplePolygon;
use proptest::prelude::*;

fn dead_point_certified(poly: &SimplePolygon, d: Point2, beacon: Point2) -> bool {
    let eps = poly.eps();
    let Some(at) = poly.locate_on_boundary(d) else {
        return false;
    };
    if poly.direction_enters(&at, beacon - d) {
        return false;
    }
    let on_projection = |e: usize| {
        let s = poly.edge(e);
        let u = s.b - s.a;
        let h = s.a + u * ((beacon - s.a).dot(u) / u.dot(u));
        h.dist(d) <= eps
    };
    match at.vertex() {
        None => on_projection(at.edge),
        Some(i) => {
            let v = poly.vertex(i);
            let blocked = |w: Point2| (w - v).dot(beacon - v) <= 1e-12 * (w - v).norm() * (beacon - v).norm();
            on_projection(i)
                || on_projection(poly.prev(i))
                || (blocked(poly.vertex(poly.next(i))) && blocked(poly.vertex(poly.prev(i))))
        }
    }
}

fn check_pairs(poly: &SimplePolygon, seed: u64, pairs: u64) -> Result<(), TestCaseError> {
    let geo = Geodesics::new(poly);
    for k in 0..pairs {
        let s = random_interior_point(poly, seed ^ (2 * k + 1).wrapping_mul(0x2545_f491));
        let b = random_interior_point(poly, seed ^ (2 * k + 2).wrapping_mul(0x9e37_79b9));
        let t = simulate(poly, s, b, default_budget(poly.len())).unwrap();
        let rep = check_trajectory(Some(&geo), &t, 1e-7);
        prop_assert_eq!(rep.total(), 0, "start {} beacon {}: {:?}", s, b, rep);
        for w in t.edges.windows(2) {
            prop_assert_eq!(w[0].to, w[1].from);
        }
        for e in &t.edges {
            prop_assert!(e.from != e.to);
            if e.kind == MoveKind::Slide {
                let seg = poly.edge(e.edge.unwrap());
                prop_assert!(seg.dist_to(e.from) <= poly.eps());
                prop_assert!(seg.dist_to(e.to) <= poly.eps());
            }
        }
        if let Outcome::DeadPoint(d) = t.outcome {
            prop_assert!(dead_point_certified(poly, d, b), "dead point {} for beacon {}", d, b);
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_trajectories_keep_their_invariants(n in 4usize..40, seed in 0u64..1_000_000) {
        check_pairs(&random_polygon(n, seed), seed, 40)?;
    }

    #[test]
    fn fixture_trajectories_keep_their_invariants(seed in 0u64..1_000_000) {
        check_pairs(&spike6(), seed, 40)?;
        check_pairs(&l_polygon(), seed, 40)?;
    }
}
