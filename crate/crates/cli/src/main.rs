//! `ulam-lab`: seed-deterministic experiment runner.
//!
//! Exit codes: 0 when every asserted inequality holds, 2 when one fails,
//! 1 on usage or configuration errors.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{ExperimentConfig, Format};

#[derive(Parser)]
#[command(name = "ulam-lab", version, about = "Averaging, convex-hull and paradoxical-decomposition experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// JSON experiment config; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Perturb the regular representation of a finite group, average it and
    /// check positivity, proximity and the witness condition.
    StabilityDemo {
        #[command(flatten)]
        common: Common,
    },
    /// Decide membership of a target operator in the convex hull of a map's
    /// values and cross-check against the vector condition.
    HullCheck {
        #[command(flatten)]
        common: Common,
        /// Operator-map JSON file.
        #[arg(long)]
        map: PathBuf,
        /// Target operator JSON file (`{dim, re, im}`).
        #[arg(long)]
        target: PathBuf,
    },
    /// Invariance-defect linear programs on free-group and lattice balls.
    ParadoxDemo {
        #[command(flatten)]
        common: Common,
    },
    /// Følner-box averages of the quadratic phase map on the integers.
    FolnerDemo {
        #[command(flatten)]
        common: Common,
    },
    /// Report which pieces and translates of the first-letter decomposition
    /// of F2 contain a word.
    ClassifyWord {
        #[command(flatten)]
        common: Common,
        /// Reduced word such as `aB` or `a b^-1`.
        word: String,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Run(String),
}

impl From<ulam_lab::Error> for CliError {
    fn from(e: ulam_lab::Error) -> Self {
        CliError::Run(e.to_string())
    }
}

fn resolve(common: &Common) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match &common.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if common.seed.is_some() {
        cfg.seed = common.seed;
    }
    if common.out.is_some() {
        cfg.out = common.out.clone();
    }
    if common.format.is_some() {
        cfg.format = common.format;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let outcome = match &cli.command {
        Command::StabilityDemo { common } => commands::stability_demo(resolve(common)?)?,
        Command::HullCheck { common, map, target } => commands::hull_check(resolve(common)?, map, target)?,
        Command::ParadoxDemo { common } => commands::paradox_demo(resolve(common)?)?,
        Command::FolnerDemo { common } => commands::folner_demo(resolve(common)?)?,
        Command::ClassifyWord { common, word } => commands::classify_word(resolve(common)?, word)?,
    };
    let commands::Outcome { bytes, failures, out } = outcome;
    match out {
        Some(path) => std::fs::write(&path, &bytes)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes).map_err(|e| CliError::Run(e.to_string()))?;
        }
    }
    for f in &failures {
        eprintln!("assertion failed: {f}");
    }
    Ok(failures.is_empty())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(CliError::Usage(msg)) | Err(CliError::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
