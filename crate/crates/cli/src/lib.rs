//! Command-line front end for `twisted-newton-core`.
//!
//! Every command produces a JSON document tagged with [`SCHEMA`]; rationals
//! travel as `[num, den]` integer pairs and polygons as
//! `{"vertices": [[xn, xd, yn, yd], ...]}`. Exit codes: 0 when every check
//! passes, 1 when a mathematical check fails, 2 for invalid parameters.

pub mod args;
pub mod commands;
pub mod grid;
pub mod json;
pub mod sample;

use thiserror::Error;

pub use args::{Cli, Command, Common, Format, GridArgs};

pub const SCHEMA: &str = "twisted-newton/1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("check failed: {0}")]
    Failed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Invalid(_) | CliError::Io(_) => 2,
        }
    }
}

impl From<twisted_newton_core::Error> for CliError {
    fn from(e: twisted_newton_core::Error) -> Self {
        match e {
            twisted_newton_core::Error::TheoremViolation(msg) => CliError::Failed(msg),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

/// A rendered command result.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

/// Parse-free entry point used by `main` and the integration tests.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Polygon(c) => commands::polygon(c),
        Command::Hodge(c) => commands::hodge(c),
        Command::Hasse(c) => commands::hasse(c),
        Command::Lfun(c) => commands::lfun(c),
        Command::Verify(c) => commands::verify(c),
        Command::Dwork(c) => commands::dwork(c),
        Command::Grid(g) => grid::cmd_grid(g),
    }
}
