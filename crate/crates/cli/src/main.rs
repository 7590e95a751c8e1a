fn main() {
    std::process::exit(hardy_cli::run_cli(std::env::args_os()));
}
