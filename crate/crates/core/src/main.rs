fn main() {
    std::process::exit(helgason_super::cli::main_with_args(std::env::args_os()));
}
