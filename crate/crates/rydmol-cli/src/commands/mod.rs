//! Subcommand implementations. Each resolves its parameters as
//! flag > config file > built-in default, runs the physics, and writes one
//! output (plus optional side files) through a [`Sink`].

mod gate;
mod magic_field;
mod scales;
mod shift_scan;

use serde_json::Value;

use crate::cli::{Cli, Command};
use crate::config::{OutputFormat, RunConfig};
use crate::error::CliError;
use crate::manifest::RunManifest;
use crate::output::Sink;

pub struct Context {
    pub config: RunConfig,
    pub pool: rayon::ThreadPool,
    pub seed: Option<u64>,
    out: Option<std::path::PathBuf>,
    format: Option<OutputFormat>,
    precision: Option<usize>,
}

impl Context {
    pub fn sink(&self, default_format: OutputFormat) -> Sink {
        let block = &self.config.output;
        Sink {
            format: self.format.or(block.format).unwrap_or(default_format),
            path: self.out.clone().or_else(|| block.path.clone()),
            precision: self.precision.or(block.precision).unwrap_or(9),
        }
    }

    pub fn manifest(&self, command: &str, resolved: Value) -> RunManifest {
        RunManifest::new(command, resolved, self.seed)
    }
}

/// flag > config file > default.
fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
        .map_err(|err| CliError::Usage(format!("thread pool: {err}")))?;
    let ctx = Context {
        config,
        pool,
        seed: cli.seed,
        out: cli.out,
        format: cli.format,
        precision: cli.precision,
    };
    match &cli.command {
        Command::ShiftScan(args) => shift_scan::run(&ctx, args),
        Command::MagicField(args) => magic_field::run(&ctx, args),
        Command::Scales(args) => scales::run(&ctx, args),
        Command::Gate(command) => gate::run(&ctx, command),
    }
}
