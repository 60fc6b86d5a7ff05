//! Command-line front end: run configuration, experiment orchestration and
//! CSV/JSON emission for `harmonic-na-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::{cmd_eval, cmd_roundtrip, cmd_verify, EvalTarget, Theorem};
use config::{RunConfig, OUT_DIR_ENV};
use error::{CliError, EXIT_FAIL, EXIT_PASS};

#[derive(Debug, Parser)]
#[command(name = "harmonic-na", version, about = "Radial harmonic analysis on Damek-Ricci spaces")]
pub struct Cli {
    /// JSON run configuration; omitted fields take their defaults.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory (overrides the config file and the environment).
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Seed of the randomized oracles.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Print the built-in default configuration and exit.
    #[arg(long)]
    pub print_default_config: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a special function on equispaced points.
    Eval {
        #[arg(value_enum)]
        which: EvalTarget,
    },
    /// Run verifiers and write one CSV/JSON report pair per theorem.
    Verify {
        #[arg(value_enum)]
        theorem: Theorem,
    },
    /// Transform roundtrip errors and Plancherel defects of the family.
    Roundtrip {
        /// Also write every member's time and spectral samples.
        #[arg(long)]
        dump_family: bool,
    },
}

/// Config file (or defaults) with the `--seed`, `--out` and environment
/// overrides applied.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(dir) = std::env::var_os(OUT_DIR_ENV).filter(|v| !v.is_empty()) {
        config.output_dir = dir.into();
    }
    if let Some(dir) = &cli.out {
        config.output_dir = dir.clone();
    }
    Ok(config)
}

/// Runs the parsed command line and returns the process exit status.
pub fn run(cli: Cli) -> i32 {
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("harmonic-na: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    if cli.print_default_config {
        print!("{}", RunConfig::default().to_json());
        return Ok(EXIT_PASS);
    }
    let Some(command) = &cli.command else {
        return Err(CliError::Config("no subcommand given (expected eval, verify or roundtrip)".into()));
    };
    let config = resolve_config(&cli)?;
    let out = config.output_dir.clone();
    let verdict = |pass: bool| if pass { EXIT_PASS } else { EXIT_FAIL };
    match *command {
        Command::Eval { which } => {
            let path = cmd_eval(&config, which, &out)?;
            println!("{}", path.display());
            Ok(EXIT_PASS)
        }
        Command::Verify { theorem } => {
            let outcome = cmd_verify(&config, theorem, &out)?;
            for (name, pass) in &outcome.verdicts {
                println!("{name}: {}", if *pass { "pass" } else { "FAIL" });
            }
            Ok(verdict(outcome.pass))
        }
        Command::Roundtrip { dump_family } => {
            let outcome = cmd_roundtrip(&config, &out, dump_family)?;
            println!("{}", outcome.files[0].display());
            Ok(verdict(outcome.pass))
        }
    }
}
