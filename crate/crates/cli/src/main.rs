use std::process::ExitCode;

use clap::Parser;
use ctheta_cli::{run, Cli, EXIT_PARSE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(out) = f.output {
                print!("{out}");
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
