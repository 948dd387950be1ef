use clap::Parser;

fn main() {
    let cli = chanrep_cli::Cli::parse();
    std::process::exit(chanrep_cli::run(cli));
}
