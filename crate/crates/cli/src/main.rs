//! `ncsphere`: verification driver for quantum sphere algebras, projectors,
//! Chern characters, FRT quantum matrices and their representations.

mod chern;
mod frt;
mod report;
mod repr;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use ncsphere::presentations::{by_name, export_presentation, list_catalog};
use ncsphere::repr::{ReprParams, Sign};

use report::Report;

/// Bad input or parameters outside their domain; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<ncsphere::Error> for UsageError {
    fn from(e: ncsphere::Error) -> Self {
        UsageError(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "ncsphere", version, about = "Exact checks for quantum spheres, projectors and FRT algebras")]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a catalog presentation, a catalog projector, a block projector, or everything.
    Verify {
        /// sphere2 | sphere4 | sphere4_star | projector_e | projector_f | projector_etilde | block | all
        target: String,
        /// Block `t` as matrix text, `I`, `I<n>` or `@file`.
        #[arg(long)]
        t: Option<String>,
        /// Block `t~` (defaults to `t`).
        #[arg(long)]
        ttilde: Option<String>,
        /// Central element `Z`.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        /// Catalog presentation the block entries live in.
        #[arg(long, default_value = "sphere4z")]
        algebra: String,
    },
    /// Chern character component ch_n of a catalog projector (e, f, etilde).
    Chern {
        #[arg(long)]
        projector: String,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        /// Specialize parameters after computing, e.g. `q=1` or `q=-1,s=1/2`.
        #[arg(long, allow_hyphen_values = true)]
        specialize: Option<String>,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        /// Fail unless the component is zero (or nonzero).
        #[arg(long, value_enum)]
        expect: Option<chern::Expect>,
    },
    /// FRT quantum matrices from the standard or a user R-matrix.
    Frt {
        #[arg(long)]
        n: Option<usize>,
        /// R-matrix file in the `n = N` + bracketed-matrix format.
        #[arg(long)]
        rmatrix: Option<String>,
        #[arg(long, value_delimiter = ',', default_value = "ybe,relations,det,star,sphere")]
        check: Vec<String>,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
    },
    /// Numerical check of the representations on a truncated basis.
    Repr {
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        q: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        s: f64,
        #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
        c_re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        c_im: f64,
        #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
        theta: f64,
        /// `+` or `-`.
        #[arg(long, default_value = "+", allow_hyphen_values = true, value_parser = parse_sign)]
        sign: Sign,
        #[arg(long = "K", default_value_t = 30)]
        k: usize,
        #[arg(long = "L", default_value_t = 10)]
        l: usize,
        /// Write `k, zeta, radicand, omega` rows to this file.
        #[arg(long)]
        csv: Option<String>,
    },
    /// List the catalog presentations.
    Catalog,
    /// Print a catalog presentation as JSON.
    Export { name: String },
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        other => Err(format!("expected + or -, got `{other}`")),
    }
}

fn run(command: Command) -> Result<Report, UsageError> {
    match command {
        Command::Verify { target, t, ttilde, z, algebra } => {
            verify::run(&target, &verify::BlockArgs { algebra, t, ttilde, z })
        }
        Command::Chern { projector, degree, specialize, max_degree, expect } => {
            chern::run(&chern::ChernArgs { projector, degree, max_degree, specialize, expect })
        }
        Command::Frt { n, rmatrix, check, max_n } => frt::run(&frt::FrtArgs { n, rmatrix, checks: check, max_n }),
        Command::Repr { q, s, c_re, c_im, theta, sign, k, l, csv } => {
            let p = ReprParams { q, s, c: Complex64::new(c_re, c_im), theta, sign, k, l };
            repr::run(&p, csv.as_deref())
        }
        Command::Catalog | Command::Export { .. } => unreachable!("handled before dispatch"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Catalog => {
            let list = list_catalog();
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&list).expect("catalog serializes"));
            } else {
                for c in list {
                    println!("{:<14} {} [{}] ({})", c.name, c.description, c.generators.join(", "), c.parameter_constraints);
                }
            }
            return ExitCode::SUCCESS;
        }
        Command::Export { name } => {
            return match by_name(&name) {
                Ok(p) => {
                    println!("{}", serde_json::to_string_pretty(&export_presentation(&p)).expect("doc serializes"));
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            };
        }
        _ => {}
    }
    match run(cli.command) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
