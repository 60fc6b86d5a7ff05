use clap::Parser;

fn main() {
    let cli = harmonic_na::Cli::parse();
    std::process::exit(harmonic_na::run(cli));
}
