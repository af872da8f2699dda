fn main() {
    std::process::exit(refinery::cli::run(std::env::args_os()));
}
