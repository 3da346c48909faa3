use std::process::ExitCode;

use clap::Parser;
use orbkit_cli::commands::run;
use orbkit_cli::registry::Registry;
use orbkit_cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = Registry::discover().and_then(|reg| run(&cli.command, &reg));
    match outcome {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_text());
            }
            ExitCode::from(u8::try_from(report.exit_code()).unwrap_or(1))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
