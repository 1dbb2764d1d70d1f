use clap::Parser;

fn main() {
    let cli = affine_induced::cli::Cli::parse();
    std::process::exit(affine_induced::cli::main_with(cli));
}
