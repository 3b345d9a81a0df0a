use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use stairvpa_cli::commands::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = execute(&cli.command);
    print!("{}", report.stdout);
    eprint!("{}", report.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(report.code as u8)
}
