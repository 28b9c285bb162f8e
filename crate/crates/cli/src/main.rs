fn main() {
    std::process::exit(gcomb_cli::main_with_args(std::env::args_os()));
}
