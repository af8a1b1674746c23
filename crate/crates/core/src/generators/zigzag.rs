use crate::error::{Error, Result};
use crate::geom::{line_intersection, HalfPlane, Point2, Rect};
use crate::polygon::SimplePolygon;

/// Upper bound on line slopes.
pub const DEFAULT_EPS_SLOPE: f64 = 0.05;

/// Horizontal width of the corridors.
const WIDTH: f64 = 1.0;
/// Rise of each slope-1 connector.
const RISE: f64 = 4.0;

/// The line `y = slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSpec {
    pub slope: f64,
    pub intercept: f64,
}

impl LineSpec {
    pub fn new(slope: f64, intercept: f64) -> Self {
        LineSpec { slope, intercept }
    }

    pub fn at(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

/// Lower envelope as the sequence of active lines from left to right, with the
/// breakpoints between consecutive active lines.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub lines: Vec<usize>,
    pub breakpoints: Vec<Point2>,
}

/// Lower envelope of a set of lines by divide and conquer.
pub fn lower_envelope(lines: &[LineSpec]) -> Envelope {
    assert!(!lines.is_empty(), "lower_envelope needs at least one line");
    let idx: Vec<usize> = (0..lines.len()).collect();
    let (act, xs) = envelope_rec(lines, &idx);
    let breakpoints = xs
        .iter()
        .zip(&act)
        .map(|(&x, &l)| Point2::new(x, lines[l].at(x)))
        .collect();
    Envelope { lines: act, breakpoints }
}

/// `(active lines, breakpoint xs)` with `xs.len() == active.len() - 1`.
fn envelope_rec(lines: &[LineSpec], idx: &[usize]) -> (Vec<usize>, Vec<f64>) {
    if idx.len() == 1 {
        return (vec![idx[0]], Vec::new());
    }
    let mid = idx.len() / 2;
    let a = envelope_rec(lines, &idx[..mid]);
    let b = envelope_rec(lines, &idx[mid..]);
    merge_envelopes(lines, a, b)
}

/// `a` is below `b` just right of `x` (or at minus infinity when `x` is `None`).
fn below_at(lines: &[LineSpec], a: usize, b: usize, x: Option<f64>) -> bool {
    let (la, lb) = (lines[a], lines[b]);
    match x {
        None => (la.slope, -la.intercept, b) > (lb.slope, -lb.intercept, a),
        Some(x) => {
            let (ya, yb) = (la.at(x), lb.at(x));
            if ya != yb {
                ya < yb
            } else if la.slope != lb.slope {
                la.slope < lb.slope
            } else {
                (la.intercept, a) < (lb.intercept, b)
            }
        }
    }
}

fn merge_envelopes(lines: &[LineSpec], a: (Vec<usize>, Vec<f64>), b: (Vec<usize>, Vec<f64>)) -> (Vec<usize>, Vec<f64>) {
    let (la, xa) = a;
    let (lb, xb) = b;
    let mut act: Vec<usize> = Vec::new();
    let mut xs: Vec<f64> = Vec::new();
    let push = |act: &mut Vec<usize>, xs: &mut Vec<f64>, l: usize, x: Option<f64>| {
        if act.last() == Some(&l) {
            return;
        }
        if let Some(x) = x {
            if !act.is_empty() {
                xs.push(x);
            }
        }
        act.push(l);
    };
    let (mut i, mut j) = (0usize, 0usize);
    let mut left: Option<f64> = None;
    loop {
        let (ca, cb) = (la[i], lb[j]);
        let next_a = xa.get(i).copied();
        let next_b = xb.get(j).copied();
        let right = match (next_a, next_b) {
            (Some(p), Some(q)) => Some(p.min(q)),
            (Some(p), None) => Some(p),
            (None, Some(q)) => Some(q),
            (None, None) => None,
        };
        // which line is lower at the left end of the interval
        let a_low = below_at(lines, ca, cb, left);
        let first = if a_low { ca } else { cb };
        let other = if a_low { cb } else { ca };
        push(&mut act, &mut xs, first, left);
        // crossing inside the interval
        let (lf, lo) = (lines[first], lines[other]);
        if lf.slope > lo.slope {
            let xc = (lo.intercept - lf.intercept) / (lf.slope - lo.slope);
            let inside = left.is_none_or(|l| xc > l) && right.is_none_or(|r| xc < r);
            if inside {
                push(&mut act, &mut xs, other, Some(xc));
            }
        }
        match right {
            None => break,
            Some(r) => {
                if next_a == Some(r) {
                    i += 1;
                }
                if next_b == Some(r) {
                    j += 1;
                }
                left = Some(r);
            }
        }
    }
    (act, xs)
}

/// A zigzag corridor instance: the polygon, the distinguished point `p`, the rectangle
/// `r` containing all line intersections, and the half-plane `l_u` that bounds the
/// attracting beacons in `r` from below-left.
#[derive(Debug, Clone)]
pub struct ZigzagInstance {
    pub polygon: SimplePolygon,
    pub p: Point2,
    pub r: Rect,
    pub l_u: HalfPlane,
    pub lines: Vec<LineSpec>,
}

/// Leftmost and rightmost x of all pairwise line intersections; extreme vertices of a
/// line arrangement come from lines adjacent in slope order.
fn intersection_x_range(lines: &[LineSpec]) -> Option<(f64, f64)> {
    let mut ord: Vec<&LineSpec> = lines.iter().collect();
    ord.sort_by(|a, b| a.slope.total_cmp(&b.slope));
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for w in ord.windows(2) {
        let x = (w[1].intercept - w[0].intercept) / (w[0].slope - w[1].slope);
        lo = lo.min(x);
        hi = hi.max(x);
    }
    lo.is_finite().then_some((lo, hi))
}

fn meet(p: Point2, dp: Point2, q: Point2, dq: Point2) -> Result<Point2> {
    let (t, _) = line_intersection(p, dp, q, dq).ok_or(Error::DegenerateSlopes)?;
    Ok(p + dp * t)
}

struct Layout {
    verts: Vec<Point2>,
    p: Point2,
    r: Rect,
    max_top: f64,
    x_r: f64,
}

/// Builds the corridor for lines sorted by ascending slope, ending at `x_end`.
fn layout(lines: &[LineSpec], x_end: f64, final_len: f64, xr_range: (f64, f64)) -> Result<Layout> {
    let k = lines.len();
    let snap = |x: f64| (x * 8.0).floor() / 8.0;
    // bottom corners v and top outer corners T, right to left
    let mut v = vec![Point2::default(); k];
    let mut t = vec![Point2::default(); k];
    let xk = snap(x_end);
    v[k - 1] = Point2::new(xk, lines[k - 1].at(xk));
    for i in (0..k).rev() {
        let s = lines[i].slope;
        let h = if i == 0 {
            RISE + 2.0 * WIDTH
        } else {
            let prev = lines[i - 1];
            let est = prev.at(v[i].x - RISE - 2.0 * WIDTH) - v[i].y + RISE;
            est.max(RISE + 2.0 * WIDTH).ceil()
        };
        t[i] = Point2::new(v[i].x - s * h, v[i].y + h);
        if i > 0 {
            let prev = lines[i - 1];
            let x = snap((t[i].x - t[i].y + prev.intercept) / (1.0 - prev.slope));
            if x >= t[i].x {
                return Err(Error::DegenerateSlopes);
            }
            v[i - 1] = Point2::new(x, prev.at(x));
            if t[i].y - v[i - 1].y < 0.5 * RISE {
                return Err(Error::DegenerateSlopes);
            }
        }
    }
    let up = |i: usize| Point2::new(-lines[i].slope, 1.0);
    // west walls through v - (W, 0); lower walls of connectors sqrt(2) W below the upper walls
    let west = |i: usize| Point2::new(v[i].x - WIDTH, v[i].y);
    let mut lower = Vec::with_capacity(3 * k);
    let p = west(0) + up(0) * (t[0].y - v[0].y);
    let mut max_top = f64::NEG_INFINITY;
    for i in 0..k {
        let (lo_pt, lo_dir) = if i + 1 < k {
            (Point2::new(v[i].x, v[i].y - std::f64::consts::SQRT_2 * WIDTH), t[i + 1] - v[i])
        } else {
            (Point2::new(v[i].x, v[i].y - WIDTH), Point2::new(1.0, 0.0))
        };
        let b = meet(west(i), up(i), lo_pt, lo_dir)?;
        lower.push(b);
        if i + 1 < k {
            let w = meet(lo_pt, lo_dir, west(i + 1), up(i + 1))?;
            if w.y <= v[i + 1].y + WIDTH || w.y >= t[i + 1].y {
                return Err(Error::DegenerateSlopes);
            }
            max_top = max_top.max(w.x + w.y);
            lower.push(w);
        }
    }
    let vk = v[k - 1];
    let x_r = (vk.x + final_len).ceil();
    let j_u = Point2::new(x_r, vk.y);
    let j_l = Point2::new(x_r, vk.y - WIDTH);
    let (ix_lo, ix_hi) = xr_range;
    let x_r2 = ix_hi.ceil() + 2.0;
    if x_r >= ix_lo {
        return Err(Error::DegenerateSlopes);
    }
    let ys_r: Vec<f64> = lines.iter().flat_map(|l| [l.at(x_r), l.at(x_r2)]).collect();
    let y_lo = (ys_r.iter().copied().fold(f64::INFINITY, f64::min).min(j_l.y) - 2.0 * WIDTH).floor();
    let y_hi = (ys_r.iter().copied().fold(f64::NEG_INFINITY, f64::max).max(j_u.y) + 2.0 * WIDTH).ceil();

    let mut verts = Vec::with_capacity(4 * k + 6);
    verts.push(p);
    verts.extend(lower);
    verts.push(j_l);
    verts.push(Point2::new(x_r, y_lo));
    verts.push(Point2::new(x_r2, y_lo));
    verts.push(Point2::new(x_r2, y_hi));
    verts.push(Point2::new(x_r, y_hi));
    verts.push(j_u);
    for i in (0..k).rev() {
        verts.push(v[i]);
        verts.push(t[i]);
    }
    Ok(Layout { verts, p, r: Rect::new(Point2::new(x_r, y_lo), Point2::new(x_r2, y_hi)), max_top, x_r })
}

/// Builds the zigzag corridor polygon for a set of lines with distinct slopes in
/// `(0, DEFAULT_EPS_SLOPE]`.
pub fn zigzag_polygon(lines: &[LineSpec]) -> Result<ZigzagInstance> {
    if lines.is_empty() {
        return Err(Error::DegenerateInput("zigzag needs at least one line"));
    }
    let mut sorted = lines.to_vec();
    sorted.sort_by(|a, b| a.slope.total_cmp(&b.slope));
    for l in &sorted {
        if !(l.slope > 0.0 && l.slope <= DEFAULT_EPS_SLOPE * (1.0 + 1e-12)) || !l.intercept.is_finite() {
            return Err(Error::DegenerateSlopes);
        }
    }
    if sorted.windows(2).any(|w| w[1].slope - w[0].slope <= 1e-12) {
        return Err(Error::DegenerateSlopes);
    }
    let xr_range = match intersection_x_range(&sorted) {
        Some(r) => r,
        None => (sorted[0].intercept.abs() + 1.0, sorted[0].intercept.abs() + 2.0),
    };
    let k = sorted.len();
    let env = lower_envelope(&sorted);
    let steep = sorted[k - 1];
    let mut final_len = 4.0 * WIDTH;
    let mut gap = RISE * 4.0;
    for _ in 0..64 {
        let x_end = xr_range.0 - 2.0 - final_len - gap;
        let lay = layout(&sorted, x_end, final_len, xr_range)?;
        // every slope -1 line through a top corner must pass below-left of the envelope in R
        let env_left = lay.x_r + steep.at(lay.x_r);
        let env_min = env
            .breakpoints
            .iter()
            .map(|b| b.x + b.y)
            .fold(env_left, f64::min);
        let slack = env_min - lay.max_top;
        if slack > 2.0 * WIDTH || k == 1 {
            let polygon = SimplePolygon::new(lay.verts)?;
            let l_u = HalfPlane::new(-1.0, -1.0, -lay.max_top.max(f64::MIN / 4.0)).unwrap_or(HalfPlane {
                a: -std::f64::consts::FRAC_1_SQRT_2,
                b: -std::f64::consts::FRAC_1_SQRT_2,
                c: f64::MAX,
            });
            return Ok(ZigzagInstance { polygon, p: lay.p, r: lay.r, l_u, lines: sorted });
        }
        final_len += (2.0 * WIDTH - slack).max(WIDTH) * 2.0;
        gap *= 1.5;
    }
    Err(Error::DegenerateSlopes)
}

/// `k` lines tangent to a parabola with dyadic slopes and intercepts, so that every line
/// appears on the lower envelope with breakpoints spaced 4 apart.
pub fn tangent_lines(k: usize) -> Vec<LineSpec> {
    let m = ((k as f64 / DEFAULT_EPS_SLOPE).log2().ceil() as i32).max(1);
    let unit = 2f64.powi(-m);
    (0..k)
        .map(|i| {
            let j = (i + 1) as f64;
            LineSpec::new(j * unit, j * j * 2f64.powi(1 - m))
        })
        .collect()
}

/// Zigzag instance over [`tangent_lines`].
pub fn zigzag_from_k(k: usize) -> Result<ZigzagInstance> {
    zigzag_polygon(&tangent_lines(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_examples() {
        let e = lower_envelope(&[LineSpec::new(0.05, 1.0), LineSpec::new(0.08, 0.0)]);
        assert_eq!(e.breakpoints.len(), 1);
        let b = e.breakpoints[0];
        assert!((b.x - 100.0 / 3.0).abs() < 1e-9 && (b.y - 8.0 / 3.0).abs() < 1e-9);
        let e = lower_envelope(&[LineSpec::new(0.01, 2.0)]);
        assert!(e.breakpoints.is_empty());
        let e = lower_envelope(&[LineSpec::new(0.01, 2.0), LineSpec::new(0.01, 1.0)]);
        assert_eq!(e.lines, vec![1]);
    }

    /// Brute-force envelope: sample the pointwise minimum densely.
    fn brute_active(lines: &[LineSpec], x: f64) -> usize {
        (0..lines.len())
            .min_by(|&a, &b| lines[a].at(x).total_cmp(&lines[b].at(x)))
            .unwrap()
    }

    #[test]
    fn envelope_matches_pointwise_minimum() {
        let lines = tangent_lines(50);
        let e = lower_envelope(&lines);
        assert_eq!(e.lines.len(), 50);
        for (k, b) in e.breakpoints.iter().enumerate() {
            assert_eq!(brute_active(&lines, b.x - 0.5), e.lines[k]);
            assert_eq!(brute_active(&lines, b.x + 0.5), e.lines[k + 1]);
        }
        for w in e.lines.windows(2) {
            assert!(lines[w[0]].slope > lines[w[1]].slope);
        }
    }

    #[test]
    fn tangent_breakpoints_are_spaced() {
        let e = lower_envelope(&tangent_lines(8));
        let xs: Vec<f64> = e.breakpoints.iter().map(|b| b.x).collect();
        assert_eq!(xs, vec![-30., -26., -22., -18., -14., -10., -6.]);
    }

    #[test]
    fn zigzag_is_valid_and_monotone() {
        for k in [1, 2, 3, 8, 33] {
            let z = zigzag_from_k(k).unwrap();
            assert_eq!(z.polygon.len(), 4 * k + 6);
            assert!(x_monotone(z.polygon.vertices()));
            assert_eq!(z.polygon.vertex(0), z.p);
        }
    }

    pub(crate) fn x_monotone(v: &[Point2]) -> bool {
        let n = v.len();
        let lo = (0..n).min_by(|&a, &b| v[a].x.total_cmp(&v[b].x)).unwrap();
        let hi = (0..n).max_by(|&a, &b| v[a].x.total_cmp(&v[b].x)).unwrap();
        let mut i = lo;
        while i != hi {
            let j = (i + 1) % n;
            if v[j].x < v[i].x {
                return false;
            }
            i = j;
        }
        while i != lo {
            let j = (i + 1) % n;
            if v[j].x > v[i].x {
                return false;
            }
            i = j;
        }
        true
    }
}
