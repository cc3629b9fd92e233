fn main() {
    std::process::exit(polarity::cli::run(std::env::args_os()));
}
