fn main() {
    std::process::exit(czf_realizability::cli::main_with_args(std::env::args()));
}
