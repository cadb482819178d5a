use clap::Parser;
use tauprec_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => print!("{text}"),
        Err(e) => {
            eprintln!("tauprec {}: {e}", cli.command.name());
            std::process::exit(e.exit_code());
        }
    }
}
