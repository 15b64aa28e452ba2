// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

use clap::Parser;
use onecount_cli::{run, Cli};

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
