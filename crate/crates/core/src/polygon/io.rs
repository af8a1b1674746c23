//! Plain-text polygon format.
//!
//! ```text
//! # optional comment lines
//! 4
//! 0 0
//! 4 0
//! 4 4
//! 0 4
//! ```
//!
//! Coordinates are written with 17 significant digits, which round-trips
//! every `f64` exactly.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geom::Point2;

use super::SimplePolygon;

/// Formats a coordinate with 17 significant digits in positional notation
/// (scientific notation for very large or small magnitudes).
pub fn format_coord(v: f64) -> String {
    if v == 0.0 {
        return "0.0000000000000000".to_string();
    }
    let sci = format!("{:.16e}", v);
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-20..=20).contains(&exp) {
        return sci;
    }
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if exp >= 0 {
        let int_len = exp as usize + 1;
        if int_len >= digits.len() {
            out.push_str(&digits);
            out.extend(std::iter::repeat_n('0', int_len - digits.len()));
            out.push_str(".0");
        } else {
            out.push_str(&digits[..int_len]);
            out.push('.');
            out.push_str(&digits[int_len..]);
        }
    } else {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
        out.push_str(&digits);
    }
    out
}

fn parse_f64(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>().map_err(|e| Error::Parse { line, msg: format!("bad number {tok:?}: {e}") })
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a polygon block plus any trailing `TAG x y` lines (for example `P x y`).
pub fn parse_polygon_with_points(text: &str) -> Result<(SimplePolygon, Vec<(String, Point2)>)> {
    let mut lines = content_lines(text);
    let (ln, first) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let n: usize = first
        .parse()
        .map_err(|_| Error::Parse { line: ln, msg: format!("expected vertex count, got {first:?}") })?;
    let mut verts = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, l) = lines.next().ok_or(Error::Parse {
            line: ln,
            msg: format!("expected {n} vertices, found {}", verts.len()),
        })?;
        let mut it = l.split_whitespace();
        let (Some(x), Some(y), None) = (it.next(), it.next(), it.next()) else {
            return Err(Error::Parse { line: ln, msg: format!("expected \"x y\", got {l:?}") });
        };
        verts.push(Point2::new(parse_f64(x, ln)?, parse_f64(y, ln)?));
    }
    let mut extra = Vec::new();
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(Error::Parse { line: ln, msg: format!("unexpected line {l:?}") });
        }
        extra.push((toks[0].to_string(), Point2::new(parse_f64(toks[1], ln)?, parse_f64(toks[2], ln)?)));
    }
    Ok((SimplePolygon::new(verts)?, extra))
}

pub fn parse_polygon(text: &str) -> Result<SimplePolygon> {
    parse_polygon_with_points(text).map(|(p, _)| p)
}

/// Writes a vertex ring in the polygon format.
pub fn write_polygon(verts: &[Point2]) -> String {
    let mut s = String::new();
    writeln!(s, "{}", verts.len()).unwrap();
    for v in verts {
        writeln!(s, "{} {}", format_coord(v.x), format_coord(v.y)).unwrap();
    }
    s
}
