use std::process::ExitCode;

use clap::Parser;
use turan_cli::{failure_list, run, write_outputs, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    let outcome = match run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if cfg.json {
        print!("{}", outcome.json);
    } else {
        print!("{}", outcome.text);
    }
    if let Err(e) = write_outputs(&cfg, &outcome) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if !outcome.ok() {
        match failure_list(&outcome) {
            Ok(list) => eprintln!("{list}"),
            Err(e) => eprintln!("error: {e:#}"),
        }
    }
    ExitCode::from(outcome.exit_code() as u8)
}
