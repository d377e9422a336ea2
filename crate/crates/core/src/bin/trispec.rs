fn main() {
    std::process::exit(trispec::cli::main());
}
