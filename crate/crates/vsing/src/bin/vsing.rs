fn main() {
    std::process::exit(vsing::cli::run());
}
