fn main() {
    std::process::exit(cmtwist_cli::main_with_args(std::env::args_os()));
}
