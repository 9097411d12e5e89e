//! Command-line front end.
//!
//! Every command writes CSV: a block of `# key=value` lines echoing the
//! configuration, a header row and data rows with 17 significant digits.
//! Exit codes: 0 success, 1 a verified bound was violated, 2 bad input,
//! 3 numerical failure.

mod commands;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;

pub use commands::execute;

#[derive(Parser, Debug)]
#[command(name = "sectionlab", version, about = "Sections of convex bodies: profiles, derived bodies, fractional derivatives and stability checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Parallel section profile `t, A, A', concavity residual`.
    Section {
        /// Number of profile points when `--t` is absent.
        #[arg(long, default_value_t = 64)]
        count: usize,
    },
    /// Stability checks on one body, a pair, or a sweep family.
    Verify {
        #[arg(long, value_enum)]
        check: Check,
    },
    /// Fractional derivatives `A^{(p)}(0)` by the integral and the eigenvalue routes.
    Fracderiv,
    /// Harmonic coefficients of the radial function, or the `I_p` eigenvalue table without `--body`.
    Harmonics,
    /// Intersection body radial values on the sphere grid.
    Ibody {
        /// Also write the harmonic expansion as a `radial_series` body file.
        #[arg(long)]
        series: Option<PathBuf>,
    },
    /// Cross-section body radial values and maximizers on the sphere grid.
    Cbody,
    /// Radial, support and `L^2` distances between two bodies (or a body and its reflection).
    Metric,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Mmo,
    Main1,
    Cor1,
    Main2,
    Intparallel,
    Keylemma,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Body file (TOML).
    #[arg(long, global = true)]
    pub body: Option<PathBuf>,
    /// Second body file.
    #[arg(long, global = true)]
    pub body2: Option<PathBuf>,
    /// Direction, comma separated; normalized. Defaults to the last axis.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xi: Option<String>,
    /// Section heights, comma separated.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Fractional or `I_p` orders, comma separated.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// Mollifier scale applied to loaded bodies (and to mollified sweep members).
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    /// Sphere grid order.
    #[arg(long, global = true, default_value_t = 32)]
    pub grid_order: usize,
    /// Largest harmonic degree.
    #[arg(long, global = true, default_value_t = 12)]
    pub max_degree: usize,
    /// Sweep family `name:lo:hi:count`; names: shifted_ball, shifted_ellipsoid,
    /// mollified_cube, dilate, ellipsoid_stretch.
    #[arg(long, global = true)]
    pub sweep: Option<String>,
    /// Dimension for sweeps and eigenvalue tables.
    #[arg(long, global = true, default_value_t = 3)]
    pub dim: usize,
    /// Recorded in the output; all computations are deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

/// Failure of a command with its exit code.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Numeric(String),
    Violated(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Violated(_) => 1,
            Failure::Input(_) => 2,
            Failure::Numeric(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidBody(_)
            | Error::DimError { .. }
            | Error::RangeError(_)
            | Error::PoleError(_)
            | Error::PreconditionError(_)
            | Error::SmoothnessError(_)
            | Error::Parse(_) => Failure::Input(e.to_string()),
            Error::FrameError(_) | Error::BoundaryError { .. } | Error::ResolutionError(_) | Error::FitError(_) => {
                Failure::Numeric(e.to_string())
            }
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("SECTIONLAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // A second call in the same process fails harmlessly.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    configure_threads();
    match execute(&cli) {
        Ok(()) => 0,
        Err(f) => {
            match &f {
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Numeric(m) => eprintln!("numerical failure: {m}"),
                Failure::Violated(m) => eprintln!("violated: {m}"),
            }
            f.code()
        }
    }
}
