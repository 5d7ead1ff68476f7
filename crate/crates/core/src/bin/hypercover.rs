fn main() {
    std::process::exit(hypercover::cli::main_with_args());
}
