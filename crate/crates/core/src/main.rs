fn main() {
    std::process::exit(weylpieces::cli::main_exit_code());
}
