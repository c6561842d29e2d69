fn main() {
    std::process::exit(modalwb::cli::run(std::env::args().collect()));
}
