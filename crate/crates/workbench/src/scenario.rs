//! Loading polygons and points from the command line.

use std::path::{Path, PathBuf};

use beacon_iar::geom::{Point2, Tolerance};
use beacon_iar::polygon::{parse_polygon_with_points, Containment};
use beacon_iar::SimplePolygon;

use crate::error::{Result, WbError};

/// Tolerance overrides from the global flags; absent values keep the polygon's defaults.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub eps_geom: Option<f64>,
    pub eps_dist: Option<f64>,
}

/// A polygon file with its named points and effective tolerances.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub path: PathBuf,
    pub polygon: SimplePolygon,
    pub points: Vec<(String, Point2)>,
}

impl Scenario {
    pub fn load(path: &Path, ov: Overrides) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| WbError::Io { path: path.to_path_buf(), source })?;
        let (polygon, points) = parse_polygon_with_points(&text)?;
        let polygon = apply(polygon, ov)?;
        Ok(Scenario { path: path.to_path_buf(), polygon, points })
    }

    /// The explicit point, or else the file's `P` line.
    pub fn point(&self, explicit: Option<Point2>) -> Result<Point2> {
        let p = explicit
            .or_else(|| self.points.iter().find(|(t, _)| t == "P").map(|&(_, q)| q))
            .ok_or_else(|| WbError::Usage("--point is required (the polygon file has no P line)".into()))?;
        if self.polygon.contains(p) == Containment::Exterior {
            return Err(beacon_iar::Error::PointOutsidePolygon(p).into());
        }
        Ok(p)
    }
}

pub fn apply(poly: SimplePolygon, ov: Overrides) -> Result<SimplePolygon> {
    if ov.eps_geom.is_none() && ov.eps_dist.is_none() {
        return Ok(poly);
    }
    let base = poly.tolerance();
    let geom = ov.eps_geom.unwrap_or(base.eps_geom);
    let dist = ov.eps_dist.unwrap_or(base.eps_dist.max(geom));
    Ok(poly.with_tolerance(Tolerance::new(geom, dist)?))
}

/// Parses `X,Y`.
pub fn parse_point(s: &str) -> std::result::Result<Point2, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected X,Y, got {s:?}"))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad coordinate {t:?}: {e}"));
    let p = Point2::new(num(x)?, num(y)?);
    if !p.is_finite() {
        return Err(format!("non-finite point {s:?}"));
    }
    Ok(p)
}
