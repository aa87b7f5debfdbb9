mod args;
mod fail;
mod parse;
mod run;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::fail::{Failure, EXIT_USAGE, EXIT_VERIFY};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    log::info!("config: {cli:?}");
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.max(1))
        .build_global()
    {
        log::warn!("thread pool: {e}");
    }
    match run::run(&cli) {
        Ok(summary) => {
            if cli.json {
                println!("{}", summary.json);
            } else {
                print!("{}", summary.text);
            }
            if summary.verified == Some(false) {
                ExitCode::from(EXIT_VERIFY)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
