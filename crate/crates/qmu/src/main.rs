fn main() {
    std::process::exit(qmu::cli::run());
}
