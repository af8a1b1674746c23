use std::path::PathBuf;

use beacon_iar::geom::Point2;
use clap::{Args, Parser, Subcommand};

use crate::bench::Family;
use crate::scenario::parse_point;

#[derive(Debug, Parser)]
#[command(name = "beacon", version, about = "Beacon attraction and inverse attraction regions in simple polygons")]
pub struct Cli {
    /// Absolute geometric tolerance (default 1e-9 times the polygon diameter).
    #[arg(long, global = true)]
    pub tolerance_geom: Option<f64>,
    /// Absolute arrival tolerance (default 1e-7 times the polygon diameter).
    #[arg(long, global = true)]
    pub tolerance_dist: Option<f64>,
    /// Seed for generated instances.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PolygonArg {
    /// Polygon file (vertex count, then one "x y" line per vertex, CCW).
    #[arg(long)]
    pub polygon: PathBuf,
}

#[derive(Debug, Args)]
pub struct PointArg {
    /// Root point; defaults to the polygon file's `P` line.
    #[arg(long, value_parser = parse_point)]
    pub point: Option<Point2>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a polygon file describes a simple CCW polygon.
    Validate(#[command(flatten)] PolygonArg),
    /// Simulate the attraction of one point by a beacon.
    Trajectory {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long, value_parser = parse_point)]
        start: Point2,
        #[arg(long, value_parser = parse_point)]
        beacon: Point2,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Print whether the beacon attracts the point.
    Attracts {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long, value_parser = parse_point)]
        beacon: Point2,
        #[arg(long, value_parser = parse_point)]
        point: Point2,
    },
    /// Pruned shortest path tree edges.
    Spt {
        #[command(flatten)]
        polygon: PolygonArg,
        #[command(flatten)]
        point: PointArg,
    },
    /// Shortest path map regions.
    Spm {
        #[command(flatten)]
        polygon: PolygonArg,
        #[command(flatten)]
        point: PointArg,
    },
    /// Inverse attraction region of a point.
    Iar {
        #[command(flatten)]
        polygon: PolygonArg,
        #[command(flatten)]
        point: PointArg,
        #[arg(long, conflicts_with = "optimal")]
        naive: bool,
        #[arg(long)]
        optimal: bool,
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Compare the region against the simulation oracle on a grid.
    OracleCompare {
        #[command(flatten)]
        polygon: PolygonArg,
        #[command(flatten)]
        point: PointArg,
        /// Grid spacing.
        #[arg(long)]
        grid: f64,
        /// Samples closer than this to the region boundary are skipped.
        #[arg(long, default_value_t = 0.0)]
        margin: f64,
        #[arg(long)]
        naive: bool,
    },
    /// Generate an instance.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Draw a polygon with optional overlays.
    Render {
        #[command(flatten)]
        polygon: PolygonArg,
        #[command(flatten)]
        point: PointArg,
        /// Shade the inverse attraction region of the point.
        #[arg(long)]
        iar: bool,
        /// Outline the shortest path map cells of the point.
        #[arg(long)]
        spm: bool,
        /// Dash the constraint lines that bound the region.
        #[arg(long)]
        lines: bool,
        /// Trajectories as START_X,START_Y:BEACON_X,BEACON_Y.
        #[arg(long = "trajectory")]
        trajectories: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the optimal construction over an instance family (CSV).
    Bench {
        #[arg(long)]
        family: Family,
        /// Comma-separated target vertex counts.
        #[arg(long, value_delimiter = ',', default_values_t = [4096, 8192, 16384, 32768, 65536, 131072])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenFamily {
    /// Corridor polygon whose region traces the lower envelope of a line set.
    Zigzag {
        /// File with one "slope intercept" line per input line.
        #[arg(long, conflicts_with = "k", required_unless_present = "k")]
        lines: Option<PathBuf>,
        /// Number of tangent lines of the unit parabola.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Random simple polygon.
    Random {
        #[arg(long)]
        n: usize,
    },
    /// Polygon whose region has at least k components.
    Comb {
        #[arg(long)]
        k: usize,
    },
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
