fn main() {
    std::process::exit(heron4d::cli::run(std::env::args().collect()));
}
