use clap::Parser;
use survivor::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
