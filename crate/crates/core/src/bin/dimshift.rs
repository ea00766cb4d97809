fn main() {
    std::process::exit(dimshift::cli::run_cli(std::env::args_os()));
}
