use std::process::ExitCode;

use clap::Parser;
use nmhh_cli::commands::{run, Cli};
use nmhh_cli::output::render;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            print!("{}", render(&out, cli.format));
            ExitCode::from(out.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
