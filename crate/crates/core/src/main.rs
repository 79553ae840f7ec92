use clap::Parser;

fn main() {
    let cli = urg::cli::Cli::parse();
    std::process::exit(urg::cli::run(&cli));
}
