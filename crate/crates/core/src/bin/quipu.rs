fn main() {
    std::process::exit(quipu_core::cli::main_with_stdio());
}
