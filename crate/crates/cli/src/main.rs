fn main() {
    std::process::exit(recip_cli::main_with_args(std::env::args_os()));
}
