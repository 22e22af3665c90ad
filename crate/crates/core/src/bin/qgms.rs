fn main() {
    std::process::exit(qgms::cli::run(std::env::args_os()));
}
