fn main() {
    std::process::exit(regretlab::cli::main_with_env());
}
