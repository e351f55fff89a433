fn main() {
    std::process::exit(monogenic::cli::main_entry());
}
