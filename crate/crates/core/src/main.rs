fn main() {
    std::process::exit(kerf::cli::run(std::env::args_os()));
}
