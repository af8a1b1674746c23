//! Static SVG figures: polygon outline, shaded IAR, dashed effective lines, SPM cells and
//! trajectory arrows. Element order and number formatting are fixed, so equal inputs
//! give byte-identical documents.

use std::fmt::Write;

use beacon_iar::attraction::{MoveKind, Trajectory};
use beacon_iar::geom::Point2;
use beacon_iar::iar::IarResult;
use beacon_iar::SimplePolygon;

#[derive(Debug, Default, Clone)]
pub struct Overlays<'a> {
    pub iar: Option<&'a IarResult>,
    /// Effective-line segments drawn dashed.
    pub lines: Vec<(Point2, Point2)>,
    pub spm_cells: Vec<Vec<Point2>>,
    pub trajectories: Vec<Trajectory>,
    /// Labelled markers, e.g. the root point.
    pub points: Vec<(String, Point2)>,
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn path_data(out: &mut String, ring: &[Point2]) {
    for (k, q) in ring.iter().enumerate() {
        let _ = write!(out, "{}{} {}", if k == 0 { "M" } else { " L" }, num(q.x), num(q.y));
    }
    out.push_str(" Z");
}

/// Renders `poly` with the given overlays.
pub fn render_svg(poly: &SimplePolygon, ov: &Overlays) -> String {
    let bb = poly.bbox();
    let diam = poly.diameter();
    let pad = 0.05 * diam;
    let (x0, y0) = (bb.min.x - pad, bb.min.y - pad);
    let (w, h) = (bb.max.x - bb.min.x + 2.0 * pad, bb.max.y - bb.min.y + 2.0 * pad);
    let scale = 800.0 / w.max(h);
    let dot = 4.0 / scale;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        num(w * scale),
        num(h * scale),
        num(x0),
        num(-(y0 + h)),
        num(w),
        num(h)
    );
    s.push_str(concat!(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\">",
        "<path d=\"M0 0 L10 5 L0 10 Z\" fill=\"#c0392b\"/></marker></defs>\n"
    ));
    s.push_str("<g transform=\"scale(1,-1)\">\n");

    let mut d = String::new();
    path_data(&mut d, poly.vertices());
    let _ = writeln!(s, r##"<path class="polygon" d="{d}" fill="#f7f7f7" stroke="none"/>"##);

    if let Some(res) = ov.iar {
        for c in &res.components {
            let mut d = String::new();
            path_data(&mut d, c.vertices());
            let _ = writeln!(
                s,
                r##"<path class="iar" d="{d}" fill="#5dade2" fill-opacity="0.55" stroke="#1f618d" stroke-width="1" vector-effect="non-scaling-stroke"/>"##
            );
        }
    }
    for cell in &ov.spm_cells {
        let mut d = String::new();
        path_data(&mut d, cell);
        let _ = writeln!(
            s,
            r##"<path class="spm" d="{d}" fill="none" stroke="#7f8c8d" stroke-width="0.5" vector-effect="non-scaling-stroke"/>"##
        );
    }
    for (a, b) in &ov.lines {
        let _ = writeln!(
            s,
            r##"<line class="effective" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#117a65" stroke-width="1.5" stroke-dasharray="6 4" vector-effect="non-scaling-stroke"/>"##,
            num(a.x),
            num(a.y),
            num(b.x),
            num(b.y)
        );
    }

    let mut d = String::new();
    path_data(&mut d, poly.vertices());
    let _ = writeln!(
        s,
        r##"<path class="outline" d="{d}" fill="none" stroke="#000" stroke-width="1.5" vector-effect="non-scaling-stroke"/>"##
    );

    for t in &ov.trajectories {
        for e in &t.edges {
            let dash = if e.kind == MoveKind::Slide { r#" stroke-dasharray="3 2""# } else { "" };
            let _ = writeln!(
                s,
                r##"<line class="{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#c0392b" stroke-width="1.5"{dash} marker-end="url(#arrow)" vector-effect="non-scaling-stroke"/>"##,
                if e.kind == MoveKind::Pull { "pull" } else { "slide" },
                num(e.from.x),
                num(e.from.y),
                num(e.to.x),
                num(e.to.y)
            );
        }
        let _ = writeln!(
            s,
            r##"<circle class="beacon" cx="{}" cy="{}" r="{}" fill="#f1c40f" stroke="#000" stroke-width="0.5" vector-effect="non-scaling-stroke"/>"##,
            num(t.beacon.x),
            num(t.beacon.y),
            num(dot)
        );
    }
    for (label, q) in &ov.points {
        let _ = writeln!(
            s,
            r##"<circle class="point" cx="{}" cy="{}" r="{}" fill="#000"><title>{}</title></circle>"##,
            num(q.x),
            num(q.y),
            num(dot),
            label
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use beacon_iar::fixtures::{p, spike6, square};
    use beacon_iar::iar::iar_optimal;

    #[test]
    fn numbers_are_compact() {
        assert_eq!(num(2.0), "2");
        assert_eq!(num(-0.0), "0");
        assert_eq!(num(0.1234567), "0.123457");
        assert_eq!(num(-1e-9), "0");
    }

    #[test]
    fn full_square_is_one_shaded_path() {
        let sq = square();
        let res = iar_optimal(&sq, p(2., 2.)).unwrap();
        let svg = render_svg(&sq, &Overlays { iar: Some(&res), ..Default::default() });
        assert_eq!(svg.matches(r#"class="iar""#).count(), 1);
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn spike_shows_its_effective_edge() {
        let poly = spike6();
        let res = iar_optimal(&poly, p(0.5, 0.5)).unwrap();
        let lines = res.internal_edges().into_iter().map(|(a, b, _)| (a, b)).collect();
        let svg = render_svg(&poly, &Overlays { iar: Some(&res), lines, ..Default::default() });
        assert_eq!(svg.matches(r#"class="iar""#).count(), 1);
        let iar_path = svg.lines().find(|l| l.contains(r#"class="iar""#)).unwrap();
        assert_eq!(iar_path.matches(" L").count(), 5);
        let dashed: Vec<&str> = svg.lines().filter(|l| l.contains(r#"class="effective""#)).collect();
        assert_eq!(dashed.len(), 1);
        let ends = |a: &str, b: &str| dashed[0].contains(a) && dashed[0].contains(b);
        assert!(ends(r#"x1="2" y1="6""#, r#"x2="3" y2="3""#) || ends(r#"x1="3" y1="3""#, r#"x2="2" y2="6""#));
    }
}
