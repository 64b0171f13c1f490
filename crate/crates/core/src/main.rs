fn main() {
    std::process::exit(lie_conformal::cli::run(std::env::args_os()));
}
