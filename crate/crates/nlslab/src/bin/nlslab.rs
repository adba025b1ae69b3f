fn main() {
    std::process::exit(nlslab::harness::cli::run());
}
