use std::process::ExitCode;

use clap::Parser;
use graphex::cli::{run, Cli};

fn main() -> ExitCode {
    // Usage errors exit with clap's code 2, matching invalid input.
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("graphex: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
