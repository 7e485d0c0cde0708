fn main() {
    std::process::exit(entlife::cli::run());
}
