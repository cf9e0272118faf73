use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use lommel_cli::report::EXIT_USAGE;
use lommel_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    match run(&cli).and_then(|outcome| {
        match &cli.out {
            Some(path) => std::fs::write(path, &outcome.text)?,
            None => std::io::stdout().lock().write_all(outcome.text.as_bytes())?,
        }
        Ok(outcome)
    }) {
        Ok(outcome) => {
            for note in &outcome.notes {
                eprintln!("{note}");
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
