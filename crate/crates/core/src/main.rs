fn main() {
    std::process::exit(complements::cli::main());
}
