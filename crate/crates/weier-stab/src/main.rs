use std::process::ExitCode;

use clap::Parser;

use weier_stab::{cli::Cli, run, AppError};

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Domain(message)) => {
            eprintln!("{}", serde_json::json!({ "error": message }));
            ExitCode::from(1)
        }
        Err(AppError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
