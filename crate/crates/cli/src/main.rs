fn main() {
    std::process::exit(reslab_cli::main_with_args(std::env::args_os()));
}
