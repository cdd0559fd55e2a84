//! Command-line front end: constructs orthogonal-exponential sets for
//! rational polytopes and cube shadows, verifies them against the Fourier
//! oracle, and reproduces the bundled worked examples.

mod io;
mod run;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "orthopoly", version, about = "Orthogonal exponentials for polytopes")]
pub struct Cli {
    /// JSON config file; values present in it override the flags below.
    #[arg(long, global = true)]
    pub config: Option<std::path::PathBuf>,
    /// Directory for output artifacts (env: ORTHOPOLY_OUTPUT_DIR).
    #[arg(long, global = true, env = "ORTHOPOLY_OUTPUT_DIR", default_value = ".")]
    pub output_dir: std::path::PathBuf,
    /// Orthogonality tolerance used by verification reports.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Seed recorded in reports and used by any randomized sweep.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build an orthogonal frequency set for a rational polytope.
    Construct(ConstructArgs),
    /// Verify a frequency set (CSV) against a polytope's Fourier oracle.
    Verify(VerifyArgs),
    /// Evaluate the Fourier transform of a polytope at given frequencies.
    Fourier(FourierArgs),
    /// Estimate the box-counting density of a point set.
    Density(DensityArgs),
    /// Kernel, frequency lattice, density bound and weight grid for a cube
    /// shadow given by a matrix and target dimension.
    Zonotope(ZonotopeArgs),
    /// Regenerate the bundled worked examples end to end.
    Fixtures(FixturesArgs),
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// Polytope JSON: {"dim": d, "vertices": [["p/q", ...], ...]}.
    #[arg(long)]
    pub polytope: std::path::PathBuf,
    /// 21 = greedy lattice over all edge directions, 22 = rank-one axis set.
    #[arg(long, value_parser = ["21", "22"])]
    pub theorem: String,
    /// Axis index (1-based) for --theorem 22.
    #[arg(long, default_value_t = 1)]
    pub axis: usize,
    /// Number of frequency points to produce.
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    /// Sup-norm enumeration bound for the greedy walk.
    #[arg(long, default_value_t = 128)]
    pub enum_bound: i64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub polytope: std::path::PathBuf,
    /// CSV of frequency points, one row per point.
    #[arg(long)]
    pub lambda: std::path::PathBuf,
}

#[derive(Args, Debug)]
pub struct FourierArgs {
    #[arg(long)]
    pub polytope: std::path::PathBuf,
    /// Comma-separated frequency, e.g. "1.5,-2".
    #[arg(long)]
    pub omega: String,
}

#[derive(Args, Debug)]
pub struct DensityArgs {
    /// CSV of points, one row per point.
    #[arg(long)]
    pub points: std::path::PathBuf,
    /// Sup-norm radius guaranteed to be fully covered by the point file.
    #[arg(long)]
    pub covered: f64,
    /// Comma-separated box sizes, e.g. "100,200".
    #[arg(long)]
    pub rho: String,
}

#[derive(Args, Debug)]
pub struct ZonotopeArgs {
    /// Matrix JSON: {"matrix": [[entry, ...], ...], "m": k, "kernel": null}.
    /// Entries may be rational strings ("1/3") or floats.
    #[arg(long)]
    pub matrix: std::path::PathBuf,
    /// Target dimension override; defaults to the file's "m".
    #[arg(long)]
    pub m: Option<usize>,
    /// Optional integer kernel rows JSON file overriding the computed one.
    #[arg(long)]
    pub kernel: Option<std::path::PathBuf>,
    /// Number of lattice sample points written to the CSV.
    #[arg(long, default_value_t = 25)]
    pub count: usize,
    /// Weight-grid resolution per axis (CSV for plotting).
    #[arg(long, default_value_t = 33)]
    pub grid: usize,
}

#[derive(Args, Debug)]
pub struct FixturesArgs {
    /// fig1 | ex32 | ex33
    #[arg(value_parser = ["fig1", "ex32", "ex33"])]
    pub name: String,
    #[arg(long, default_value_t = 1)]
    pub p: i64,
    #[arg(long, default_value_t = 1)]
    pub q: i64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let payload = serde_json::json!({
                "error": format!("{err:#}"),
            });
            eprintln!("{payload}");
            ExitCode::FAILURE
        }
    }
}
