use std::process::ExitCode;

use clap::Parser;
use pnt_cli::{run, RunConfig};

fn main() -> ExitCode {
    let code = match RunConfig::try_parse() {
        Ok(config) => run(&config),
        Err(e) => {
            let _ = e.print();
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
