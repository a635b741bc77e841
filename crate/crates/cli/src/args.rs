use std::path::PathBuf;

use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Svg,
    Json,
    Both,
}

/// Star unfolding of a convex polyhedron along a quasigeodesic loop.
#[derive(Debug, Clone, Parser)]
#[command(name = "loopfold", version)]
pub struct Cli {
    /// Polyhedron in OFF format.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Face holding the seed point.
    #[arg(long)]
    pub seed_face: Option<usize>,
    /// Seed point in that face's frame, as `u,v`.
    #[arg(long, value_parser = parse_uv, allow_hyphen_values = true)]
    pub seed_uv: Option<[f64; 2]>,
    /// Seed direction, radians in the face frame.
    #[arg(long, allow_hyphen_values = true)]
    pub direction: Option<f64>,
    /// Loop to unfold along, as written in the `loop` field of a run's JSON.
    #[arg(long, conflicts_with_all = ["seed_face", "seed_uv", "direction"])]
    pub loop_file: Option<PathBuf>,
    /// Output path without extension; JSON goes to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Angle tolerance in radians.
    #[arg(long)]
    pub tol_angle: Option<f64>,
    /// Run the randomized sweep over this many hulls instead.
    #[arg(long)]
    pub sweep: Option<usize>,
    /// Hull point counts for the sweep, `LO:HI`.
    #[arg(long, value_parser = parse_range, default_value = "6:30")]
    pub hull_points: (usize, usize),
    #[arg(long, default_value_t = 1)]
    pub rng_seed: u64,
    /// Face-sequence depth of the shortest-path oracle; 0 skips it.
    #[arg(long)]
    pub oracle_depth: Option<usize>,
}

fn parse_uv(s: &str) -> Result<[f64; 2], String> {
    let (a, b) = s.split_once(',').ok_or("expected u,v")?;
    let u = a.trim().parse::<f64>().map_err(|e| e.to_string())?;
    let v = b.trim().parse::<f64>().map_err(|e| e.to_string())?;
    Ok([u, v])
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo = a.trim().parse::<usize>().map_err(|e| e.to_string())?;
    let hi = b.trim().parse::<usize>().map_err(|e| e.to_string())?;
    if lo < 4 || hi < lo {
        return Err("need 4 <= LO <= HI".into());
    }
    Ok((lo, hi))
}
