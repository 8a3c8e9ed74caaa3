use clap::Parser;

fn main() {
    let cli = mckay::cli::Cli::parse();
    std::process::exit(mckay::cli::run(cli));
}
