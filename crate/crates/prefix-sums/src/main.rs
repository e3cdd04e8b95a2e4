fn main() {
    std::process::exit(prefix_sums::cli::run());
}
