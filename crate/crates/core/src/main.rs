use std::process::ExitCode;

use clap::Parser;
use heiscusp::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match run(&cli, &echo) {
        Ok(out) => {
            print!("{}", out.render());
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("heiscusp: {e}");
            ExitCode::from(2)
        }
    }
}
