use clap::Parser;
use psl_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let outcome = run(cli);
    if outcome.is_error {
        eprintln!("{}", outcome.output);
    } else {
        println!("{}", outcome.output);
    }
    std::process::exit(outcome.code);
}
