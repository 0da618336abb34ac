//! `thetaw`: generate, verify, compute and extract θ-connectivity structures.
//!
//! Exit codes: 0 success, 1 verification failed or nothing found, 2 bad
//! input or unmet hypothesis, 3 size guard tripped, 4 search budget exhausted.

mod commands;
mod files;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use theta_width::connectivity::ConnectivityError;
use theta_width::decomposition::DecompositionError;
use theta_width::extraction::ExtractionError;

#[derive(Parser, Debug)]
#[command(name = "thetaw", version, about = "θ-connected sets, θ-tree-width, wheels and necklaces")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Ignore the vertex-count guard on exponential computations.
    #[arg(long, global = true)]
    pub force: bool,
    /// Graph output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Dot,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write generated graphs and structures.
    #[command(subcommand)]
    Gen(commands::gen::Gen),
    /// Check a structure against a graph.
    #[command(subcommand)]
    Verify(commands::verify::Verify),
    /// Exact values and witnesses on small graphs.
    #[command(subcommand)]
    Compute(commands::compute::Compute),
    /// Build necklaces, wheels and grids.
    #[command(subcommand)]
    Extract(commands::extract::Extract),
}

/// An error carrying its own exit code.
#[derive(Debug)]
pub struct Coded(pub u8, pub String);

impl std::fmt::Display for Coded {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::error::Error for Coded {}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(c) = cause.downcast_ref::<Coded>() {
            return c.0;
        }
        match cause.downcast_ref::<ExtractionError>() {
            Some(ExtractionError::BudgetExhausted(_)) => return 4,
            Some(ExtractionError::Connectivity(ConnectivityError::TooLarge { .. })) => return 3,
            _ => {}
        }
        if let Some(DecompositionError::TooLarge { .. }) = cause.downcast_ref::<DecompositionError>() {
            return 3;
        }
        if let Some(ConnectivityError::TooLarge { .. }) = cause.downcast_ref::<ConnectivityError>() {
            return 3;
        }
    }
    2
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(c) => commands::gen::run(&cli, c),
        Command::Verify(c) => commands::verify::run(&cli, c),
        Command::Compute(c) => commands::compute::run(&cli, c),
        Command::Extract(c) => commands::extract::run(&cli, c),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
