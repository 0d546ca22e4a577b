use std::process::ExitCode;

use clap::Parser;
use confblocks_cli::{dispatch, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = dispatch(&cli);
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
