//! `timesep`: time/space separation reports for TOML spacetime specs.
//!
//! Exit status: 0 on success, 1 on input or math errors (and on validation
//! violations), 2 when `orient` finds a loop with holonomy -1.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Time,
    Space,
}

#[derive(Debug, Parser)]
#[command(
    name = "timesep",
    version,
    about = "Time/space separation on Lorentzian 4-manifolds"
)]
struct Cli {
    /// Report format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,

    /// Absolute tolerance for sign decisions in `split` (eigenvalue count and
    /// causal class). Defaults scale with the metric.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Seed for quasi-random sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the signatures of g and h at quasi-random points of the box.
    Validate {
        spec: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Time line, eigenvalue and gap at one point.
    Split {
        spec: PathBuf,
        /// Comma separated coordinates; constant expressions allowed.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Holonomy of the time line around every declared loop.
    Orient {
        spec: PathBuf,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Evaluate multiplier * time line on a grid and locate its zeros.
    Section {
        spec: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        multiplier: String,
        /// `coord=lo:hi:n` or `coord=value`, comma separated.
        #[arg(long)]
        grid: String,
    },
    /// Covariant derivative of a vector field along a time or space section.
    Derive {
        spec: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Time mode: multiplier of the time line.
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        multiplier: String,
        /// Space mode: three coefficients on the space frame.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        /// `F0,F1,F2,F3`.
        #[arg(long, allow_hyphen_values = true)]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Also print the Christoffel symbols at the point.
        #[arg(long)]
        verbose: bool,
    },
    /// Christoffel symbols of g at one point.
    Christoffel {
        spec: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let json = cli.output == OutputFormat::Json;
    let report = commands::run(&cli, argv);
    if let Some(err) = &report.error {
        eprintln!("error: {err}");
    }
    report.print(json);
    ExitCode::from(report.exit_status)
}
