fn main() {
    std::process::exit(mca::cli::run());
}
