use beacon_iar::generators::{comb_polygon, lower_envelope, tangent_lines, zigzag_from_k, zigzag_polygon, LineSpec};
use beacon_iar::geom::Point2;
use beacon_iar::polygon::validate;
use proptest::prelude::*;

fn x_monotone(v: &[Point2]) -> bool {
    let n = v.len();
    let lo = (0..n).min_by(|&a, &b| v[a].x.total_cmp(&v[b].x)).unwrap();
    let hi = (0..n).max_by(|&a, &b| v[a].x.total_cmp(&v[b].x)).unwrap();
    let walk = |step: fn(usize, usize) -> usize, rising: bool| {
        let mut i = lo;
        while i != hi {
            let j = step(i, n);
            if (v[j].x < v[i].x) == rising && v[j].x != v[i].x {
                return false;
            }
            i = j;
        }
        true
    };
    walk(|i, n| (i + 1) % n, true) && walk(|i, n| (i + n - 1) % n, true)
}

fn check_envelope(lines: &[LineSpec]) -> Result<(), TestCaseError> {
    let e = lower_envelope(lines);
    for w in e.lines.windows(2) {
        prop_assert!(lines[w[0]].slope > lines[w[1]].slope);
    }
    for b in &e.breakpoints {
        let on = lines.iter().filter(|l| (l.at(b.x) - b.y).abs() <= 1e-9).count();
        prop_assert_eq!(on, 2, "breakpoint {} on {} lines", b, on);
        for l in lines {
            prop_assert!(l.at(b.x) >= b.y - 1e-9);
        }
    }
    Ok(())
}

#[test]
fn zigzag_valid_and_monotone_for_every_k() {
    for k in 1..=256 {
        let z = zigzag_from_k(k).unwrap();
        assert!(validate(z.polygon.vertices().to_vec()).is_ok(), "k={k}");
        assert!(x_monotone(z.polygon.vertices()), "k={k}");
        let slopes: Vec<f64> = z.lines.iter().map(|l| l.slope).collect();
        assert!(slopes.iter().all(|&s| s > 0.0 && s <= 0.05));
        let mut sorted = slopes.clone();
        sorted.sort_by(f64::total_cmp);
        sorted.dedup();
        assert_eq!(sorted.len(), slopes.len());
    }
}

#[test]
fn tangent_envelopes_check_themselves() {
    for k in [1, 2, 8, 64, 256] {
        check_envelope(&tangent_lines(k)).unwrap();
    }
}

#[test]
fn comb_certificates_hold() {
    for k in [1, 2, 3] {
        let c = comb_polygon(k).unwrap();
        assert!(c.certified_components >= k);
    }
}

proptest! {
    #[test]
    fn random_envelopes_check_themselves(raw in prop::collection::btree_map(1u32..5000, -20.0f64..20.0, 1..40)) {
        let lines: Vec<LineSpec> = raw.iter().map(|(&s, &c)| LineSpec::new(s as f64 * 1e-5, c)).collect();
        check_envelope(&lines)?;
    }

    #[test]
    fn random_line_sets_give_valid_zigzags(raw in prop::collection::btree_map(1u32..5000, -2.0f64..2.0, 1..12)) {
        let lines: Vec<LineSpec> = raw.iter().map(|(&s, &c)| LineSpec::new(s as f64 * 1e-5, c)).collect();
        if let Ok(z) = zigzag_polygon(&lines) {
            prop_assert!(x_monotone(z.polygon.vertices()));
        }
    }
}
