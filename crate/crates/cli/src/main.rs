mod cli;
mod commands;
mod output;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use cli::{Cli, Command};
use commands::{Failure, Outcome, Status};

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let (f, s) = (cli.format, cli.seed);
    match &cli.command {
        Command::Recurrence(a) => commands::recurrence(a, f, s),
        Command::Bounds(a) => commands::bounds(a, f, s),
        Command::Region(a) => commands::region(a, f, s),
        Command::Simulate(a) => commands::simulate(a, f, s),
        Command::Verify(a) => commands::verify(a, f, s),
        Command::Simon(a) => commands::simon(a, f, s),
        Command::Mixedness(a) => commands::mixedness(a, f, s),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };

    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(1);
        }
    };

    let outcome = match pool.install(|| run(&cli)) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };

    let written = match &cli.out {
        Some(path) => {
            fs::write(path, &outcome.body).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => std::io::stdout()
            .write_all(outcome.body.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }

    match outcome.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::ToleranceFailure => {
            eprintln!("error: oracle deviation above tolerance");
            ExitCode::from(2)
        }
        Status::BudgetExhausted => {
            eprintln!("error: at least one trial exhausted its budget");
            ExitCode::from(3)
        }
    }
}
