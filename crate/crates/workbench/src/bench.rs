//! Sequential timing runs of the optimal construction over an instance family.

use std::fmt::Write;
use std::time::Duration;

use beacon_iar::generators::{comb_polygon, random_interior_point, random_polygon, zigzag_from_k};
use beacon_iar::geom::Point2;
use beacon_iar::iar::{iar_optimal, StageTimes};
use beacon_iar::SimplePolygon;

use crate::error::{Result, WbError};

pub const HEADER: &str = "family,n,stage,seconds,iar_vertices";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Zigzag,
    Random,
    Comb,
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "zigzag" => Ok(Family::Zigzag),
            "random" => Ok(Family::Random),
            "comb" => Ok(Family::Comb),
            _ => Err(format!("unknown family {s:?} (zigzag, random, comb)")),
        }
    }
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Zigzag => "zigzag",
            Family::Random => "random",
            Family::Comb => "comb",
        }
    }

    /// An instance with about `n` vertices.
    pub fn instance(self, n: usize, seed: u64) -> Result<(SimplePolygon, Point2)> {
        match self {
            Family::Zigzag => {
                let z = zigzag_from_k(n.saturating_sub(6).div_ceil(4).max(1))?;
                Ok((z.polygon, z.p))
            }
            Family::Random => {
                let poly = random_polygon(n.max(3), seed);
                let p = random_interior_point(&poly, seed);
                Ok((poly, p))
            }
            Family::Comb => {
                let c = comb_polygon((n / 17).max(1))?;
                Ok((c.polygon, c.p))
            }
        }
    }
}

/// One measured instance: the fastest of the repetitions per stage.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub family: Family,
    pub n: usize,
    pub times: StageTimes,
    pub iar_vertices: usize,
}

impl BenchRecord {
    pub fn stages(&self) -> [(&'static str, Duration); 6] {
        let t = &self.times;
        [
            ("triangulate", t.triangulate),
            ("spm", t.spm),
            ("constraints", t.constraints),
            ("walk", t.walk),
            ("glue", t.glue),
            ("total", t.total()),
        ]
    }
}

fn fastest(a: StageTimes, b: &StageTimes) -> StageTimes {
    if b.total() < a.total() {
        *b
    } else {
        a
    }
}

pub fn run(family: Family, sizes: &[usize], reps: usize, seed: u64) -> Result<Vec<BenchRecord>> {
    let mut out = Vec::new();
    if reps == 0 {
        return Ok(out);
    }
    for &target in sizes {
        let (poly, p) = family.instance(target, seed)?;
        let mut best: Option<StageTimes> = None;
        let mut verts = 0;
        for _ in 0..reps {
            let res = iar_optimal(&poly, p)?;
            verts = res.vertex_count();
            best = Some(match best {
                None => res.times,
                Some(b) => fastest(b, &res.times),
            });
        }
        if verts > 6 * poly.len() {
            return Err(WbError::Domain(format!("{} vertices exceed 6n for n = {}", verts, poly.len())));
        }
        out.push(BenchRecord { family, n: poly.len(), times: best.unwrap_or_default(), iar_vertices: verts });
    }
    Ok(out)
}

/// Successive total-time ratios between consecutive sizes.
pub fn doubling_ratios(records: &[BenchRecord]) -> Vec<f64> {
    records
        .windows(2)
        .map(|w| w[1].times.total().as_secs_f64() / w[0].times.total().as_secs_f64().max(1e-12))
        .collect()
}

/// CSV with one row per stage and, after each record past the first, a `ratio` row
/// holding the total-time ratio to the previous size.
pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{HEADER}");
    let ratios = doubling_ratios(records);
    for (k, r) in records.iter().enumerate() {
        for (stage, d) in r.stages() {
            let _ = writeln!(s, "{},{},{},{:.6},{}", r.family.name(), r.n, stage, d.as_secs_f64(), r.iar_vertices);
        }
        if k > 0 {
            let _ = writeln!(s, "{},{},ratio,{:.4},{}", r.family.name(), r.n, ratios[k - 1], r.iar_vertices);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_repetitions_is_header_only() {
        let r = run(Family::Zigzag, &[64, 128], 0, 1).unwrap();
        assert_eq!(to_csv(&r), format!("{HEADER}\n"));
    }

    #[test]
    fn rows_per_stage_and_ratio() {
        let r = run(Family::Zigzag, &[64, 128], 1, 1).unwrap();
        let csv = to_csv(&r);
        assert_eq!(csv.lines().count(), 1 + 6 + 7);
        assert!(csv.lines().any(|l| l.contains(",ratio,")));
        for rec in &r {
            assert!(rec.iar_vertices <= 6 * rec.n);
        }
    }

    #[test]
    fn families_parse() {
        assert_eq!("comb".parse::<Family>().unwrap(), Family::Comb);
        assert!("spiral".parse::<Family>().is_err());
    }
}
