use clap::Parser;

fn main() {
    let cli = apolar::cli::Cli::parse();
    std::process::exit(apolar::cli::run(&cli));
}
