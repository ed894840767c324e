fn main() {
    std::process::exit(lscu::cli::run(std::env::args_os()));
}
