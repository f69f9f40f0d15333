fn main() {
    std::process::exit(weighted_hardy::cli::run(std::env::args_os()));
}
