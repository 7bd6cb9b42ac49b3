fn main() {
    std::process::exit(sunada::cli::main_with_args(std::env::args_os()));
}
