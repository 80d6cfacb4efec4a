fn main() {
    std::process::exit(klab::cli::main_exit());
}
