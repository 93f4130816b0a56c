fn main() {
    std::process::exit(zcacs::cli::main());
}
