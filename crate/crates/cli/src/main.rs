fn main() {
    std::process::exit(quadual_cli::app::main_with_args(std::env::args_os()));
}
