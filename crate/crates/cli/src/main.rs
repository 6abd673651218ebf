//! `orthoscheme`: command-line access to the complete-orthoscheme library.
//!
//! Every command prints one JSON record on stdout; `sweep` can emit CSV instead.
//! Failures print `{"error": code, "detail": message}` on stderr.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind as ClapErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Parser)]
#[command(name = "orthoscheme", version, about = "Hyperbolic complete orthoschemes R(h, r, theta)")]
#[command(propagate_version = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Dihedral angle `θ` at edge `v2 v3`, in radians or degrees.
#[derive(Debug, Clone, Copy, Args)]
#[group(required = true, multiple = false)]
pub struct Angle {
    /// Angle in radians.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Angle in degrees, converted to radians on input.
    #[arg(long = "theta-deg", allow_negative_numbers = true)]
    pub theta_deg: Option<f64>,
}

impl Angle {
    pub fn radians(&self) -> f64 {
        match (self.theta, self.theta_deg) {
            (Some(t), _) => t,
            (None, Some(d)) => d.to_radians(),
            (None, None) => unreachable!("clap enforces one of --theta / --theta-deg"),
        }
    }
}

/// A single member `R(h, r, θ)`.
#[derive(Debug, Clone, Copy, Args)]
pub struct Member {
    /// Height of the apex v3 = (0, 0, h).
    #[arg(long, allow_negative_numbers = true)]
    pub h: f64,
    /// Radius |v0| of the base vertex.
    #[arg(long, allow_negative_numbers = true)]
    pub r: f64,
    #[command(flatten)]
    pub angle: Angle,
}

/// The family `{R(h, r, θ)}` for fixed `r` and `θ`.
#[derive(Debug, Clone, Copy, Args)]
pub struct Family {
    #[arg(long, allow_negative_numbers = true)]
    pub r: f64,
    #[command(flatten)]
    pub angle: Angle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Schlafli,
    Montecarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Combinatorial type, Lambert threshold and vertex classes.
    Classify(Member),
    /// Edge lengths (with their kinds) and dihedral angles.
    Metrics(Member),
    /// dV/dh from the Schläfli formula (h > 1).
    Dvdh(Member),
    /// Volume by the Schläfli integral or by Monte Carlo.
    Volume {
        #[command(flatten)]
        member: Member,
        #[arg(long, value_enum, default_value_t = Method::Schlafli)]
        method: Method,
        /// Monte-Carlo sample count.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// Monte-Carlo seed.
        #[arg(long, env = "ORTHO_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Height h* of maximal volume in the family.
    Maximize {
        #[command(flatten)]
        family: Family,
        /// Also scan dV/dh for a single sign change and the Lambert range for decrease.
        #[arg(long)]
        verify: bool,
        /// Scan size used by --verify.
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
    },
    /// dV/dh and volume over an evenly spaced grid of heights.
    Sweep {
        #[command(flatten)]
        family: Family,
        #[arg(long = "h-min", allow_negative_numbers = true)]
        h_min: f64,
        #[arg(long = "h-max", allow_negative_numbers = true)]
        h_max: f64,
        /// Number of grid points, endpoints included.
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Monte-Carlo samples for rows with h <= 1.
        #[arg(long, default_value_t = 200_000)]
        samples: u64,
        #[arg(long, env = "ORTHO_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Area of the two-dimensional complete orthoscheme P0 = (r, 0), P1 = 0, P2 = (0, h).
    Area2d {
        #[arg(long, allow_negative_numbers = true)]
        h: f64,
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
        /// Also estimate the area by Monte Carlo with this many samples.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, env = "ORTHO_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            if matches!(e.kind(), ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion) {
                return ExitCode::SUCCESS;
            }
            if !e.render().to_string().contains("Usage:") {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            return ExitCode::from(output::EXIT_USAGE);
        }
    };
    match commands::run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
