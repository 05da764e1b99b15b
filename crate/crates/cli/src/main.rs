use std::fs;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use rllab_cli::{run, usage_error, RunConfig, EXIT_INPUT};

fn emit(report: &serde_json::Value) -> String {
    serde_json::to_string_pretty(report).expect("reports are plain JSON values")
}

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            println!("{}", emit(&usage_error(&e.to_string())));
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let (code, report) = run(&config);
    let text = emit(&report);
    println!("{text}");
    if let Some(path) = &config.out {
        if let Err(e) = fs::write(path, format!("{text}\n")) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT);
        }
    }
    ExitCode::from(code)
}
