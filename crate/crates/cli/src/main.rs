use std::process::ExitCode;

use clap::Parser;
use ordagg_cli::{configure_threads, run, Command};

#[derive(Debug, Parser)]
#[command(name = "ordagg", version, about = "Aggregate noisy ordinal constraints with signed MaxCut")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
