fn main() {
    std::process::exit(hurwitz::cli::run());
}
