use clap::Parser;
use std::process::ExitCode;
use topogame_cli::{run, Cli};

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("topogame: {e}");
            ExitCode::from(e.code)
        }
    }
}
