mod args;
mod commands;
mod seeds;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(commands::INPUT as u8);
        }
        Err(e) => e.exit(),
    };
    let outcome = match &cli.command {
        Command::Gen(kind) => commands::gen(kind),
        Command::Feas { instance } => commands::feas(instance),
        Command::Cover(a) => commands::cover(a),
        Command::Epsnet(a) => commands::epsnet(a),
        Command::Hitset(a) => commands::hitset(a),
        Command::Exact(c) => commands::exact(c),
        Command::Bench(a) => commands::bench(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e) as u8)
        }
    }
}
