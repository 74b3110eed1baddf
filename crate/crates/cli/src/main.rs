mod args;
mod commands;
mod io;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::Cli;
use io::CliError;

fn report(line: serde_json::Value) {
    eprintln!("{line}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Usage(e.render().to_string().trim().to_string());
            report(
                json!({ "status": "error", "kind": err.kind(), "exit": err.exit_code(), "message": err.to_string() }),
            );
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    let command = commands::command_name(&cli.command);
    match commands::run(&cli.command) {
        Ok(verdict) => {
            report(json!({ "command": command, "status": verdict.status, "exit": verdict.exit }));
            ExitCode::from(verdict.exit as u8)
        }
        Err(err) => {
            report(json!({
                "command": command,
                "status": "error",
                "kind": err.kind(),
                "exit": err.exit_code(),
                "message": err.to_string(),
            }));
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
