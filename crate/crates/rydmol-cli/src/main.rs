//! Command-line front end wiring the simulation library into reproducible
//! runs: every file output carries a manifest, grid sweeps are parallel with
//! thread-count-independent bytes, and errors map to stable exit codes.

// Validation uses negated comparisons on purpose: !(x > 0.0) also rejects
// NaN, which x <= 0.0 would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod cli;
mod commands;
mod config;
mod error;
mod manifest;
mod output;

use clap::Parser;

fn main() {
    let args = cli::Cli::parse();
    let json_errors = args.json_errors;
    if let Err(err) = commands::run(args) {
        err.report(json_errors);
        std::process::exit(err.exit_code());
    }
}
