use clap::Parser;

fn main() {
    let cli = pulsetrain::cli::Cli::parse();
    std::process::exit(pulsetrain::cli::run(cli));
}
