use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use hitchin_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    let execution = run(&cli);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(execution.stdout.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(execution.exit_code as u8)
}
