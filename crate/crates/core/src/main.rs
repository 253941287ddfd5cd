fn main() {
    std::process::exit(pseudomult::cli::run(std::env::args_os()));
}
