fn main() {
    std::process::exit(compression_schemes::cli::run(std::env::args_os()));
}
