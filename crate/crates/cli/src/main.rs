fn main() {
    std::process::exit(shiftop_cli::run(std::env::args_os()));
}
