use std::io::Write;
use std::path::Path;

use beacon_iar::attraction::{attracts, default_budget, grid_points, simulate, Outcome, SampleGrid, Trajectory};
use beacon_iar::generators::{comb_polygon, random_interior_point, random_polygon, zigzag_from_k, zigzag_polygon, LineSpec};
use beacon_iar::geom::Point2;
use beacon_iar::iar::{attracts_by_theorem, iar, Algorithm, ConstraintSet, IarResult};
use beacon_iar::polygon::write_polygon;
use beacon_iar::shortest_paths::{pruned_spt, shortest_path_map};
use beacon_iar::SimplePolygon;
use rayon::prelude::*;

use crate::bench;
use crate::cli::{Cli, Command, GenFamily};
use crate::error::{Result, WbError};
use crate::scenario::{parse_point, Overrides, Scenario};
use crate::svg::{render_svg, Overlays};

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| WbError::Io { path: path.to_path_buf(), source })
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| WbError::Io { path: path.to_path_buf(), source })
}

fn point_line(out: &mut dyn Write, tag: &str, q: Point2) -> Result<()> {
    writeln!(out, "{tag} {} {}", q.x, q.y)?;
    Ok(())
}

fn trajectory_text(out: &mut dyn Write, t: &Trajectory) -> Result<()> {
    for e in &t.edges {
        match e.edge {
            Some(i) if e.kind == beacon_iar::attraction::MoveKind::Slide => {
                writeln!(out, "SLIDE {} {} {} {} EDGE {i}", e.from.x, e.from.y, e.to.x, e.to.y)?
            }
            _ => writeln!(out, "PULL {} {} {} {}", e.from.x, e.from.y, e.to.x, e.to.y)?,
        }
    }
    match t.outcome {
        Outcome::ReachedBeacon => point_line(out, "REACHED", t.end()),
        Outcome::DeadPoint(d) => point_line(out, "DEAD", d),
    }
}

fn effective_lines(res: &IarResult) -> Vec<(Point2, Point2)> {
    res.internal_edges().into_iter().map(|(a, b, _)| (a, b)).collect()
}

fn parse_trajectory(s: &str) -> Result<(Point2, Point2)> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| WbError::Usage(format!("--trajectory expects SX,SY:BX,BY, got {s:?}")))?;
    Ok((parse_point(a).map_err(WbError::Usage)?, parse_point(b).map_err(WbError::Usage)?))
}

fn parse_lines(text: &str) -> Result<Vec<LineSpec>> {
    let mut lines = Vec::new();
    for (k, l) in text.lines().enumerate() {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let nums: Vec<f64> = l.split_whitespace().map(str::parse).collect::<std::result::Result<_, _>>().map_err(
            |e| beacon_iar::Error::Parse { line: k + 1, msg: format!("bad number: {e}") },
        )?;
        let [slope, intercept] = nums[..] else {
            return Err(beacon_iar::Error::Parse { line: k + 1, msg: "expected \"slope intercept\"".into() }.into());
        };
        lines.push(LineSpec::new(slope, intercept));
    }
    Ok(lines)
}

fn instance_text(poly: &SimplePolygon, p: Point2) -> String {
    let mut s = write_polygon(poly.vertices());
    s.push_str(&format!("P {} {}\n", p.x, p.y));
    s
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let ov = Overrides { eps_geom: cli.tolerance_geom, eps_dist: cli.tolerance_dist };
    match cli.command {
        Command::Validate(a) => {
            let sc = Scenario::load(&a.polygon, ov)?;
            writeln!(out, "OK {} vertices, area {}", sc.polygon.len(), sc.polygon.area())?;
        }
        Command::Trajectory { polygon, start, beacon, svg } => {
            let sc = Scenario::load(&polygon.polygon, ov)?;
            let poly = &sc.polygon;
            let t = simulate(poly, start, beacon, default_budget(poly.len()))?;
            trajectory_text(out, &t)?;
            if let Some(path) = svg {
                let ovl = Overlays { trajectories: vec![t], ..Default::default() };
                write_file(&path, &render_svg(poly, &ovl))?;
            }
        }
        Command::Attracts { polygon, beacon, point } => {
            let sc = Scenario::load(&polygon.polygon, ov)?;
            writeln!(out, "{}", attracts(&sc.polygon, beacon, point)?)?;
        }
        Command::Spt { polygon, point } => {
            let sc = Scenario::load(&polygon.polygon, ov)?;
            let p = sc.point(point.point)?;
            let spt = pruned_spt(&sc.polygon, p)?;
            for (u, v) in spt.edges(&sc.polygon) {
                let w = sc.polygon.vertex(v);
                writeln!(out, "EDGE {} {} {} {}", u.x, u.y, w.x, w.y)?;
            }
        }
        Command::Spm { polygon, point } => {
            let sc = Scenario::load(&polygon.polygon, ov)?;
            let p = sc.point(point.point)?;
            let spm = shortest_path_map(&sc.polygon, p)?;
            for r in &spm.regions {
                point_line(out, "BASE", r.base_point)?;
                out.write_all(write_polygon(&r.cell.pts).as_bytes())?;
            }
        }
        Command::Iar { polygon, point, naive, optimal: _, stats, svg } => {
            let sc = Scenario::load(&polygon.polygon, ov)?;
            let p = sc.point(point.point)?;
            let alg = if naive { Algorithm::Naive } else { Algorithm::Optimal };
            let res = iar(&sc.polygon, p, alg)?;
            if let Some(d) = res.perturbation {
                writeln!(out, "# root perturbed by {} {}", d.x, d.y)?;
            }
            for (k, c) in res.components.iter().enumerate() {
                writeln!(out, "COMPONENT {k}")?;
                out.write_all(write_polygon(c.vertices()).as_bytes())?;
            }
            if stats {
                writeln!(out, "GROUP1 {} GROUP2 {}", res.stats.group1, res.stats.group2)?;
            }
            if let Some(path) = svg {
                let ovl = Overlays {
                    iar: Some(&res),
                    lines: effective_lines(&res),
                    points: vec![("p".into(), p)],
                    ..Default::default()
                };
                write_file(&path, &render_svg(&sc.polygon, &ovl))?;
            }
        }
        Command::OracleCompare { polygon, point, grid, margin, naive } => {
            if grid <= 0.0 || !grid.is_finite() || margin.is_nan() || margin < 0.0 {
                return Err(WbError::Usage("--grid must be positive and --margin nonnegative".into()));
            }
            let sc = Scenario::load(&polygon.polygon, ov)?;
            let poly = &sc.polygon;
            let p = sc.point(point.point)?;
            let res = iar(poly, p, if naive { Algorithm::Naive } else { Algorithm::Optimal })?;
            let set = ConstraintSet::new(poly, p)?;
            let samples: Vec<Point2> = grid_points(poly, SampleGrid { resolution: grid, margin: 0.0 })
                .into_iter()
                .filter(|&q| res.boundary_dist(q) > margin)
                .collect();
            let verdicts: Vec<(Point2, bool, bool, bool)> = samples
                .par_iter()
                .map(|&q| Ok((q, attracts(poly, q, p)?, attracts_by_theorem(poly, &set, q)?, res.contains(q))))
                .collect::<beacon_iar::Result<_>>()?;
            let mut bad = 0;
            for &(q, sim, thm, mem) in &verdicts {
                if !(sim == thm && thm == mem) {
                    bad += 1;
                    writeln!(out, "DISAGREE {} {} simulate={sim} theorem={thm} member={mem}", q.x, q.y)?;
                }
            }
            writeln!(out, "SAMPLES {} DISAGREEMENTS {bad}", verdicts.len())?;
            if bad > 0 {
                writeln!(out, "FAIL")?;
                return Err(WbError::Domain(format!("{bad} samples disagree")));
            }
            writeln!(out, "PASS")?;
        }
        Command::Gen { family } => {
            let (poly, p) = match family {
                GenFamily::Zigzag { lines: Some(path), .. } => {
                    let z = zigzag_polygon(&parse_lines(&read_file(&path)?)?)?;
                    (z.polygon, z.p)
                }
                GenFamily::Zigzag { k, .. } => {
                    let z = zigzag_from_k(k.unwrap_or(1))?;
                    (z.polygon, z.p)
                }
                GenFamily::Random { n } => {
                    if n < 3 {
                        return Err(WbError::Usage("--n must be at least 3".into()));
                    }
                    let poly = random_polygon(n, cli.seed);
                    let p = random_interior_point(&poly, cli.seed);
                    (poly, p)
                }
                GenFamily::Comb { k } => {
                    let c = comb_polygon(k)?;
                    (c.polygon, c.p)
                }
            };
            out.write_all(instance_text(&poly, p).as_bytes())?;
        }
        Command::Render { polygon, point, iar: with_iar, spm, lines, trajectories, out: path } => {
            let sc = Scenario::load(&polygon.polygon, ov)?;
            let poly = &sc.polygon;
            let needs_p = with_iar || spm || lines;
            let p = if needs_p || point.point.is_some() { Some(sc.point(point.point)?) } else { None };
            let res = match p {
                Some(p) if with_iar || lines => Some(iar(poly, p, Algorithm::Optimal)?),
                _ => None,
            };
            let mut ovl = Overlays::default();
            if let Some(r) = &res {
                if with_iar {
                    ovl.iar = Some(r);
                }
                if lines {
                    ovl.lines = effective_lines(r);
                }
            }
            if let (Some(p), true) = (p, spm) {
                ovl.spm_cells = shortest_path_map(poly, p)?.regions.into_iter().map(|r| r.cell.pts).collect();
            }
            for s in &trajectories {
                let (a, b) = parse_trajectory(s)?;
                ovl.trajectories.push(simulate(poly, a, b, default_budget(poly.len()))?);
            }
            if let Some(p) = p {
                ovl.points.push(("p".into(), p));
            }
            let doc = render_svg(poly, &ovl);
            match path {
                Some(path) => write_file(&path, &doc)?,
                None => out.write_all(doc.as_bytes())?,
            }
        }
        Command::Bench { family, sizes, reps, out: path } => {
            let records = bench::run(family, &sizes, reps, cli.seed)?;
            let csv = bench::to_csv(&records);
            match path {
                Some(path) => write_file(&path, &csv)?,
                None => out.write_all(csv.as_bytes())?,
            }
        }
    }
    Ok(())
}
