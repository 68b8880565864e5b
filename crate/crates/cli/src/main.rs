//! `annulus-hardy`: synthesize, test and split functions with zero circle
//! means on an annulus, and probe their extensions to C².
//!
//! Exit codes: 0 success, 1 mathematical rejection, 2 input or format
//! error, 3 internal invariant violation.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use annulus_hardy::{Complex64, RadialLayout};
use clap::{ArgGroup, Parser, Subcommand};

use config::{parse_annulus, parse_grid, parse_reals, Overrides, RunConfig, Settings};

#[derive(Debug)]
pub enum Failure {
    /// The input violates the hypothesis being tested.
    Rejected(String),
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Rejected(_) => 1,
            Failure::Input(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Rejected(m) | Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<annulus_hardy::Error> for Failure {
    fn from(e: annulus_hardy::Error) -> Self {
        use annulus_hardy::Error as E;
        match e {
            E::Rejected(_) => Failure::Rejected(e.to_string()),
            E::Parameter(_) | E::Shape(_) => Failure::Input(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "annulus-hardy", version, about = "Zero circle means and Hardy-type splitting on an annulus")]
struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file (stdout when omitted, where allowed).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Truncation order of the harmonic expansion.
    #[arg(long, global = true)]
    nmax: Option<usize>,
    /// Zero-mean verdict tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Sampling grid, NRxNTHETA.
    #[arg(long, global = true, value_parser = parse_grid)]
    grid: Option<(usize, usize)>,
    #[arg(long, global = true, value_parser = parse_layout)]
    layout: Option<RadialLayout>,
    /// Annulus radii, R1,R2.
    #[arg(long, global = true, value_parser = parse_annulus)]
    annulus: Option<(f64, f64)>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a zero-mean series on the grid.
    #[command(group(ArgGroup::new("source").required(true).args(["coeffs", "random"])))]
    Synthesize {
        /// Coefficient file (a decomposition file is accepted too).
        #[arg(long)]
        coeffs: Option<PathBuf>,
        /// Draw random coefficients with this seed.
        #[arg(long)]
        random: Option<u64>,
        #[arg(long, default_value_t = 0.5)]
        decay: f64,
    },
    /// Zero-mean test of a sampled function; exit 1 when it fails.
    Check { input: Option<PathBuf> },
    /// Split a sampled function as f = f⁺ + f⁻.
    Decompose {
        input: Option<PathBuf>,
        /// Check the extension property on N random admissible circles.
        #[arg(long)]
        verify: Option<usize>,
        /// Also write sampled f⁺ and f⁻ to PREFIX.plus.json and PREFIX.minus.json.
        #[arg(long)]
        parts: Option<PathBuf>,
    },
    /// Geometry of the domains Ω± in C².
    Omega {
        #[command(subcommand)]
        command: OmegaCommand,
    },
    /// Run the oracle suite on a series; one JSON report per line.
    #[command(group(ArgGroup::new("source").required(true).args(["coeffs", "random"])))]
    Validate {
        #[arg(long)]
        coeffs: Option<PathBuf>,
        #[arg(long)]
        random: Option<u64>,
        #[arg(long, default_value_t = 0.5)]
        decay: f64,
        /// Circles for the per-circle Poisson check.
        #[arg(long, default_value_t = 10)]
        circles: usize,
    },
}

#[derive(Subcommand, Debug)]
enum OmegaCommand {
    /// Classify a point (z, w).
    Member {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        w: Complex64,
    },
    /// Intersection predicates for two leaves, next to the numeric oracle.
    Intersect {
        /// First circle, AX,AY,RHO.
        #[arg(long, allow_hyphen_values = true)]
        c1: String,
        /// Second circle, BX,BY,DELTA.
        #[arg(long, allow_hyphen_values = true)]
        c2: String,
    },
    /// |Ψ - f| along the fiber approaching (z, z̄), as CSV.
    Psi {
        input: Option<PathBuf>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        /// Points per decade of distance, from 1e-1 down to 1e-3.
        #[arg(long, default_value_t = 2)]
        per_decade: usize,
    },
    /// Random points of Ω⁺ and their reflections in Ω⁻, as CSV.
    Sample {
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
}

fn parse_layout(s: &str) -> Result<RadialLayout, String> {
    s.parse().map_err(|e: annulus_hardy::Error| e.to_string())
}

/// `RE,IM` or `RE`.
fn parse_complex(s: &str) -> Result<Complex64, String> {
    match parse_reals(s, 2) {
        Ok(v) => Ok(Complex64::new(v[0], v[1])),
        Err(e) => parse_reals(s, 1).map(|v| Complex64::new(v[0], 0.0)).map_err(|_| e),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let settings = Settings::resolve(
        config,
        Overrides {
            annulus: cli.annulus,
            grid: cli.grid,
            layout: cli.layout,
            n_max: cli.nmax,
            tol: cli.tol,
            seed: cli.seed,
            out: cli.out,
        },
    )?;
    match cli.command {
        Command::Synthesize { coeffs, random, decay } => commands::synthesize_cmd(&settings, coeffs, random, decay),
        Command::Check { input } => commands::check(&settings, settings.input(input)?),
        Command::Decompose { input, verify, parts } => commands::decompose(&settings, settings.input(input)?, verify, parts),
        Command::Omega { command } => match command {
            OmegaCommand::Member { z, w } => commands::omega_member(&settings, z, w),
            OmegaCommand::Intersect { c1, c2 } => commands::omega_intersect(&settings, &c1, &c2),
            OmegaCommand::Psi { input, z, per_decade } => commands::omega_psi(&settings, settings.input(input)?, z, per_decade),
            OmegaCommand::Sample { count } => commands::omega_sample(&settings, count),
        },
        Command::Validate { coeffs, random, decay, circles } => commands::validate(&settings, coeffs, random, decay, circles),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("annulus-hardy: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
