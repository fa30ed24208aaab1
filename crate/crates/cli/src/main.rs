mod commands;
mod config;
mod error;

use clap::{Parser, Subcommand};
use error::CliError;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "gwa",
    version,
    about = "Exact computations in generalized Weyl algebras"
)]
pub struct Cli {
    /// Algebra configuration (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Truncation degree for bounded searches and left-ideal comparisons.
    #[arg(long, global = true, env = "GWA_TRUNCATION", default_value_t = 4)]
    degree: u32,
    /// Seed for randomised simplicity certificates.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of an element of the algebra.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expression: String,
    },
    /// φ-stable ideals of the base ring.
    Ideals {
        #[command(subcommand)]
        action: IdealsAction,
    },
    /// Whittaker modules `R/Q` or the explicit theorem modules.
    Module {
        /// Generators of `Q`, separated by `;` (overrides the config).
        #[arg(long = "q", value_delimiter = ';')]
        q: Option<Vec<String>>,
        /// Whittaker type `ζ`, separated by `,` (overrides the config).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        zeta: Option<Vec<String>>,
        #[command(subcommand)]
        action: ModuleAction,
    },
    /// Builds every module of a theorem's parameter grid and checks its claims.
    Verify {
        /// One of T8.3, T8.5, T8.7, T8.9, T9, T10.
        theorem: String,
        /// `key=v1,v2,...`; the grid is the product of all lists. Without any, the built-in grid runs.
        #[arg(long = "param", value_name = "KEY=VALUES")]
        params: Vec<String>,
    },
    /// Generators of the centre.
    Center,
    /// Runs the fact suite of the configured family.
    Facts,
}

#[derive(Subcommand, Debug)]
pub enum IdealsAction {
    /// All φ-stable ideals of `𝔽[t]` for `φ(t) = αt + β`, listed up to `--degree`.
    Classify,
    /// Whether the ideal generated by the given elements is φ-stable.
    StableCheck {
        #[arg(allow_hyphen_values = true)]
        generators: Vec<String>,
    },
    /// Smallest φ-stable ideal containing the given elements.
    Closure {
        #[arg(allow_hyphen_values = true)]
        generators: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ModuleAction {
    /// Matrices (or residue description) of the module.
    Build,
    /// Action of an element: its matrix, or `a·w` for infinite-dimensional modules.
    Act {
        #[arg(allow_hyphen_values = true)]
        expression: String,
    },
    /// Whittaker vectors of type `η` (defaults to `ζ`), separated by `,`.
    WhittakerVectors {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        eta: Option<Vec<String>>,
    },
    /// Membership in `Ann_A(w)`, or the truncated equality `Ann_A(w) = AQ + ΣA(X_i − ζ_i)`.
    AnnW {
        #[arg(allow_hyphen_values = true)]
        expression: Option<String>,
    },
    /// Simplicity verdict with certificate.
    Simple,
    /// `End_A(V)` against `π(S/Q)`.
    Endo,
}

fn main() {
    let cli = Cli::parse();
    let code = match commands::run(&cli) {
        Ok(out) => {
            let body = if cli.json {
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&out.json).expect("serialisable")
                )
            } else {
                out.text
            };
            // A closed pipe (e.g. `| head`) is not an error for the command itself.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            if let Some(msg) = &out.failure {
                eprintln!("error: {msg}");
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code as i32);
}

pub(crate) fn require_config(cli: &Cli) -> Result<config::Config, CliError> {
    match &cli.config {
        Some(p) => config::Config::load(p),
        None => Err(CliError::Config("this command needs --config FILE".into())),
    }
}
