use std::process::exit;

fn main() {
    exit(consensus_lab::cli::run(std::env::args()))
}
