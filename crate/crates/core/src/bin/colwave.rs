fn main() {
    std::process::exit(colwave::cli::main());
}
